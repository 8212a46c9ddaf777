#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace blotto {

/// Reproducible random stream keyed by (seed, stream id). The generator is
/// xoshiro256** with state expanded from the key by splitmix64, so distinct
/// stream ids give unrelated sequences and split() derives child streams
/// without touching the parent.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept;

  double normal() noexcept;

  /// Child stream for sub-task `id`. Depends only on (seed, stream, id).
  RngStream split(std::uint64_t id) const;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::array<std::uint64_t, 4> s_;
};

/// Inverse CDF of Beta(a, 1): u^(1/a).
double beta_a1_quantile(double a, double u);

double sample_beta_a1(double a, RngStream& rng);

double sample_gamma(double shape, RngStream& rng);

/// log of a Gamma(shape, 1) variate; stays finite for shapes small enough
/// that the variate itself underflows.
double sample_log_gamma(double shape, RngStream& rng);

/// Symmetric Dir(alpha, ..., alpha) with k components, O(k).
std::vector<double> sample_dirichlet(double alpha, std::size_t k, RngStream& rng);

}  // namespace blotto
