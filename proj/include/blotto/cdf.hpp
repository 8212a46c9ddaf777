#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace blotto {

struct CdfAtom {
  double at;
  double mass;
};

/// Continuous piece on [lo, hi] whose CDF increment is
/// coef·((t - origin)^exponent - (lo - origin)^exponent), origin <= lo.
/// exponent = 1 is the linear (uniform-density) case; Beta(a, 1) laws are a
/// single piece with exponent a.
struct CdfSegment {
  double lo;
  double hi;
  double origin;
  double coef;
  double exponent;

  static CdfSegment linear(double lo, double hi, double mass);

  double increment(double t) const;
  double mass() const { return increment(hi); }
  double inverse_increment(double y) const;
  /// ∫ t dF over [lo, hi].
  double first_moment() const;
  CdfSegment sub(double new_lo, double new_hi) const { return {new_lo, new_hi, origin, coef, exponent}; }
};

/// One-dimensional law built from explicit atoms and continuous segments,
/// optionally raised to an integer power (the law of the max of `power` iid
/// draws). Right-continuous; atoms are first-class.
class Cdf {
 public:
  Cdf(std::vector<CdfAtom> atoms, std::vector<CdfSegment> segments, unsigned power = 1);

  static Cdf uniform(double lo, double hi);
  static Cdf point_mass(double at);
  /// Law of scale·Beta(a, 1): CDF (t/scale)^a on [0, scale].
  static Cdf scaled_beta_a1(double scale, double a);
  /// Continuous piecewise-linear CDF through (knots[i], levels[i]); flat
  /// stretches are allowed, levels must run from 0 to 1.
  static Cdf piecewise_linear(std::span<const double> knots, std::span<const double> levels);
  static Cdf empirical(std::span<const double> samples);

  double operator()(double t) const { return cdf(t); }
  double cdf(double t) const;
  /// Generalized inverse sup{θ : H(θ) <= p}, restricted to the support.
  double inverse(double p) const;
  /// ∫_{p0}^{p1} inverse(p) dp by quadrature over the pieces of the inverse.
  double inverse_integral(double p0 = 0.0, double p1 = 1.0) const;
  /// E[X] from the pieces directly (closed form when power == 1).
  double mean() const;

  double support_lo() const;
  double support_hi() const;

  bool has_atoms() const noexcept { return !atoms_.empty(); }
  unsigned power() const noexcept { return power_; }
  const std::vector<CdfAtom>& atoms() const noexcept { return atoms_; }
  const std::vector<CdfSegment>& segments() const noexcept { return segments_; }

  /// Law of the max of m iid draws.
  Cdf max_of(unsigned m) const;

  /// Locations where the CDF changes shape: atoms and segment ends.
  std::vector<double> breakpoints() const;

  /// True when no stretch of zero mass separates two pieces of the support.
  bool strictly_increasing() const;

 private:
  struct Piece {
    bool atom;
    std::size_t index;
    double start;
    double before;  // base CDF just before this piece
    double mass;
  };

  void build();
  double base_cdf(double t) const;
  double base_inverse(double q) const;

  std::vector<CdfAtom> atoms_;
  std::vector<CdfSegment> segments_;
  unsigned power_;
  std::vector<Piece> pieces_;
};

}  // namespace blotto
