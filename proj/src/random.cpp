#include "blotto/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "blotto/error.hpp"

namespace blotto {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t& x) noexcept {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

void require_shape(double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) fail(ErrorKind::NonPositiveShape, "shape parameter must be > 0");
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  std::uint64_t x = seed;
  const std::uint64_t a = splitmix64(x);
  std::uint64_t y = stream ^ a;
  for (auto& word : s_) word = splitmix64(y) ^ splitmix64(x);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

RngStream::result_type RngStream::operator()() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform() noexcept {
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() noexcept {
  // Box-Muller; the second variate is dropped so the stream stays stateless
  // beyond the generator.
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RngStream RngStream::split(std::uint64_t id) const {
  std::uint64_t x = stream_ ^ 0x6a09e667f3bcc909ULL;
  std::uint64_t child = splitmix64(x);
  x = child ^ id;
  child = splitmix64(x);
  return RngStream(seed_, child);
}

double beta_a1_quantile(double a, double u) {
  require_shape(a);
  return std::pow(u, 1.0 / a);
}

double sample_beta_a1(double a, RngStream& rng) { return beta_a1_quantile(a, rng.uniform()); }

double sample_log_gamma(double shape, RngStream& rng) {
  require_shape(shape);
  // Marsaglia-Tsang squeeze for shape >= 1; smaller shapes use
  // Gamma(a) = Gamma(a + 1) * U^(1/a), taken in log space.
  double boost = 0.0;
  double a = shape;
  if (a < 1.0) {
    boost = std::log(rng.uniform()) / a;
    a += 1.0;
  }
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return std::log(d * v) + boost;
    }
  }
}

double sample_gamma(double shape, RngStream& rng) { return std::exp(sample_log_gamma(shape, rng)); }

std::vector<double> sample_dirichlet(double alpha, std::size_t k, RngStream& rng) {
  require_shape(alpha);
  if (k < 2) fail(ErrorKind::PlayerCountTooSmall, "Dirichlet sampling needs at least 2 components");
  std::vector<double> x(k);
  for (auto& v : x) v = sample_log_gamma(alpha, rng);
  // Normalizing against the largest log-variate keeps at least one term at 1,
  // so the sum can never underflow to zero.
  const double top = *std::max_element(x.begin(), x.end());
  double sum = 0.0;
  for (auto& v : x) {
    v = std::exp(v - top);
    sum += v;
  }
  for (auto& v : x) v /= sum;
  return x;
}

}  // namespace blotto
