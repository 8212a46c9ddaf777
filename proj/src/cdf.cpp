#include "blotto/cdf.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <map>

#include "blotto/error.hpp"

namespace blotto {

namespace {

constexpr double kQuadTolerance = 1e-14;

double pow_or_identity(double x, double e) { return e == 1.0 ? x : std::pow(x, e); }

template <class F>
double integrate_smooth(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, kQuadTolerance);
}

}  // namespace

CdfSegment CdfSegment::linear(double lo, double hi, double mass) {
  if (!(hi > lo)) fail(ErrorKind::InvalidArgument, "segment needs lo < hi");
  return {lo, hi, lo, mass / (hi - lo), 1.0};
}

double CdfSegment::increment(double t) const {
  if (t <= lo) return 0.0;
  t = std::min(t, hi);
  return coef * (pow_or_identity(t - origin, exponent) - pow_or_identity(lo - origin, exponent));
}

double CdfSegment::inverse_increment(double y) const {
  if (y <= 0.0) return lo;
  const double base = pow_or_identity(lo - origin, exponent) + y / coef;
  return std::clamp(origin + pow_or_identity(base, 1.0 / exponent), lo, hi);
}

double CdfSegment::first_moment() const {
  const double e = exponent;
  auto antiderivative = [&](double t) {
    const double u = t - origin;
    return coef * (e / (e + 1.0) * pow_or_identity(u, e + 1.0) + origin * pow_or_identity(u, e));
  };
  return antiderivative(hi) - antiderivative(lo);
}

Cdf::Cdf(std::vector<CdfAtom> atoms, std::vector<CdfSegment> segments, unsigned power)
    : atoms_(std::move(atoms)), segments_(std::move(segments)), power_(power) {
  build();
}

void Cdf::build() {
  if (power_ < 1) fail(ErrorKind::InvalidArgument, "Cdf power must be >= 1");
  std::map<double, double> merged;
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.at)) fail(ErrorKind::InvalidArgument, "atom location must be finite");
    if (!(a.mass > 0.0) || a.mass > 1.0 + 1e-12) fail(ErrorKind::InvalidArgument, "atom masses must lie in (0, 1]");
    merged[a.at] += a.mass;
  }
  atoms_.clear();
  for (const auto& [at, mass] : merged) atoms_.push_back({at, mass});

  std::sort(segments_.begin(), segments_.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  std::vector<CdfSegment> split;
  for (const auto& s : segments_) {
    if (!(s.lo < s.hi) || !std::isfinite(s.hi) || !(s.origin <= s.lo) || !(s.coef > 0.0) || !(s.exponent > 0.0)) {
      fail(ErrorKind::InvalidArgument, "invalid Cdf segment");
    }
    if (!split.empty() && split.back().hi > s.lo) fail(ErrorKind::InvalidArgument, "Cdf segments overlap");
    double lo = s.lo;
    for (const auto& a : atoms_) {
      if (a.at > lo && a.at < s.hi) {
        split.push_back(s.sub(lo, a.at));
        lo = a.at;
      }
    }
    split.push_back(s.sub(lo, s.hi));
  }
  segments_ = std::move(split);

  pieces_.clear();
  for (std::size_t i = 0; i < atoms_.size(); ++i) pieces_.push_back({true, i, atoms_[i].at, 0.0, atoms_[i].mass});
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const double m = segments_[i].mass();
    if (m > 0.0) pieces_.push_back({false, i, segments_[i].lo, 0.0, m});
  }
  if (pieces_.empty()) fail(ErrorKind::InvalidArgument, "Cdf has no mass");
  std::sort(pieces_.begin(), pieces_.end(), [](const Piece& x, const Piece& y) {
    if (x.start != y.start) return x.start < y.start;
    return x.atom && !y.atom;
  });
  double cum = 0.0;
  for (auto& p : pieces_) {
    p.before = cum;
    cum += p.mass;
  }
  if (std::abs(cum - 1.0) > 1e-9) {
    fail(ErrorKind::ValidationError, "Cdf total mass is " + std::to_string(cum) + ", expected 1");
  }
}

Cdf Cdf::uniform(double lo, double hi) { return Cdf({}, {CdfSegment::linear(lo, hi, 1.0)}); }

Cdf Cdf::point_mass(double at) { return Cdf({{at, 1.0}}, {}); }

Cdf Cdf::scaled_beta_a1(double scale, double a) {
  if (!(scale > 0.0) || !(a > 0.0)) fail(ErrorKind::NonPositiveShape, "scale and shape must be positive");
  return Cdf({}, {CdfSegment{0.0, scale, 0.0, std::pow(scale, -a), a}});
}

Cdf Cdf::piecewise_linear(std::span<const double> knots, std::span<const double> levels) {
  if (knots.size() < 2 || knots.size() != levels.size()) {
    fail(ErrorKind::InvalidArgument, "piecewise-linear Cdf needs matching knots and levels (at least 2)");
  }
  if (levels.front() != 0.0 || std::abs(levels.back() - 1.0) > 1e-12) {
    fail(ErrorKind::InvalidArgument, "piecewise-linear Cdf levels must run from 0 to 1");
  }
  std::vector<CdfSegment> segs;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (!(knots[i] < knots[i + 1])) fail(ErrorKind::InvalidArgument, "knots must be strictly increasing");
    const double m = levels[i + 1] - levels[i];
    if (m < 0.0) fail(ErrorKind::InvalidArgument, "levels must be nondecreasing");
    if (m > 0.0) segs.push_back(CdfSegment::linear(knots[i], knots[i + 1], m));
  }
  return Cdf({}, std::move(segs));
}

Cdf Cdf::empirical(std::span<const double> samples) {
  if (samples.empty()) fail(ErrorKind::InvalidArgument, "empirical Cdf needs samples");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  std::vector<CdfAtom> atoms;
  const double w = 1.0 / static_cast<double>(s.size());
  for (double x : s) {
    if (!atoms.empty() && atoms.back().at == x) {
      atoms.back().mass += w;
    } else {
      atoms.push_back({x, w});
    }
  }
  return Cdf(std::move(atoms), {});
}

double Cdf::base_cdf(double t) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t, [](double v, const Piece& p) { return v < p.start; });
  if (it == pieces_.begin()) return 0.0;
  const Piece& p = *std::prev(it);
  const double v = p.atom ? p.before + p.mass : p.before + segments_[p.index].increment(t);
  return std::clamp(v, 0.0, 1.0);
}

double Cdf::cdf(double t) const {
  const double b = base_cdf(t);
  return power_ == 1 ? b : std::pow(b, static_cast<double>(power_));
}

double Cdf::base_inverse(double q) const {
  for (const auto& p : pieces_) {
    if (p.before + p.mass > q) {
      if (p.atom) return atoms_[p.index].at;
      return segments_[p.index].inverse_increment(q - p.before);
    }
  }
  return support_hi();
}

double Cdf::inverse(double p) const {
  p = std::clamp(p, 0.0, 1.0);
  const double q = power_ == 1 ? p : std::pow(p, 1.0 / static_cast<double>(power_));
  return base_inverse(q);
}

double Cdf::inverse_integral(double p0, double p1) const {
  p0 = std::clamp(p0, 0.0, 1.0);
  p1 = std::clamp(p1, 0.0, 1.0);
  const double pw = static_cast<double>(power_);
  auto to_p = [&](double q) { return power_ == 1 ? q : std::pow(q, pw); };
  double total = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& pc = pieces_[i];
    const double lo = std::max(p0, to_p(pc.before));
    const double hi = std::min(p1, i + 1 == pieces_.size() ? 1.0 : to_p(pc.before + pc.mass));
    if (!(hi > lo)) continue;
    if (pc.atom) {
      total += atoms_[pc.index].at * (hi - lo);
    } else {
      const CdfSegment& seg = segments_[pc.index];
      total += integrate_smooth(
          [&](double p) {
            const double q = power_ == 1 ? p : std::pow(p, 1.0 / pw);
            return seg.inverse_increment(q - pc.before);
          },
          lo, hi);
    }
  }
  return total;
}

double Cdf::mean() const {
  if (power_ == 1) {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.at * a.mass;
    for (const auto& s : segments_) m += s.first_moment();
    return m;
  }
  // E[X] = lo + ∫_lo^hi (1 - H(t)) dt, split where H changes shape.
  const auto knots = breakpoints();
  double m = knots.front();
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    m += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double t) { return 1.0 - cdf(t); }, a, b, 20, kQuadTolerance);
  }
  return m;
}

double Cdf::support_lo() const { return pieces_.front().start; }

double Cdf::support_hi() const {
  double hi = pieces_.front().start;
  for (const auto& p : pieces_) hi = std::max(hi, p.atom ? atoms_[p.index].at : segments_[p.index].hi);
  return hi;
}

Cdf Cdf::max_of(unsigned m) const { return Cdf(atoms_, segments_, power_ * m); }

std::vector<double> Cdf::breakpoints() const {
  std::vector<double> out;
  for (const auto& a : atoms_) out.push_back(a.at);
  for (const auto& s : segments_) {
    out.push_back(s.lo);
    out.push_back(s.hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Cdf::strictly_increasing() const {
  double reach = pieces_.front().start;
  for (const auto& p : pieces_) {
    if (p.start > reach) return false;
    reach = std::max(reach, p.atom ? atoms_[p.index].at : segments_[p.index].hi);
  }
  return true;
}

}  // namespace blotto
