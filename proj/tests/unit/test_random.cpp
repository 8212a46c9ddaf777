#include <doctest.h>

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>

#include "blotto/error.hpp"
#include "blotto/random.hpp"
#include "blotto/verify.hpp"

using namespace blotto;

TEST_CASE("streams are reproducible and keyed by seed and stream id") {
  RngStream a(42, 3);
  RngStream b(42, 3);
  RngStream c(42, 4);
  RngStream d(43, 3);
  bool differs_c = false;
  bool differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    differs_c |= x != c();
    differs_d |= x != d();
  }
  CHECK(differs_c);
  CHECK(differs_d);
}

TEST_CASE("split depends only on the parent key and id") {
  RngStream parent(9, 1);
  const RngStream s1 = parent.split(5);
  parent();
  parent();
  RngStream s2 = parent.split(5);
  RngStream s1c = s1;
  for (int i = 0; i < 50; ++i) CHECK(s1c() == s2());
  RngStream x = parent.split(6);
  RngStream y = parent.split(5);
  CHECK(x() != y());
}

TEST_CASE("uniform stays in the open unit interval with mean 1/2") {
  RngStream rng(1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("Beta(a, 1) quantile and sampler") {
  CHECK(beta_a1_quantile(0.5, 0.25) == doctest::Approx(0.0625));
  CHECK(beta_a1_quantile(1.0, 0.3) == doctest::Approx(0.3));
  RngStream rng(2);
  std::vector<double> xs(100000);
  for (double& x : xs) x = sample_beta_a1(0.5, rng);
  CHECK(ks_distance(xs, [](double t) { return std::sqrt(std::clamp(t, 0.0, 1.0)); }) < 0.01);
  std::vector<double> ys(100000);
  for (double& y : ys) y = sample_beta_a1(1.0, rng);
  CHECK(ks_distance(ys, [](double t) { return std::clamp(t, 0.0, 1.0); }) < 0.01);
}

TEST_CASE("gamma moments") {
  RngStream rng(3);
  auto moments = [&](double shape) {
    double mean = 0.0;
    double m2 = 0.0;
    const int n = 100000;
    for (int i = 1; i <= n; ++i) {
      const double x = sample_gamma(shape, rng);
      const double d = x - mean;
      mean += d / i;
      m2 += d * (x - mean);
    }
    return std::pair{mean, m2 / (n - 1)};
  };
  const auto [m1, v1] = moments(1.0);
  CHECK(std::abs(m1 - 1.0) < 0.02);
  const auto [mh, vh] = moments(0.5);
  CHECK(std::abs(mh - 0.5) < 0.02);
  CHECK(std::abs(vh - 0.5) < 0.05);
}

TEST_CASE("Gamma(2) matches its closed-form CDF") {
  RngStream rng(4);
  std::vector<double> xs(100000);
  for (double& x : xs) x = sample_gamma(2.0, rng);
  CHECK(ks_distance(xs, [](double t) { return t <= 0 ? 0.0 : 1.0 - std::exp(-t) * (1.0 + t); }) < 0.01);
}

TEST_CASE("small shapes match the regularized incomplete gamma function") {
  RngStream rng(5);
  for (double shape : {0.05, 0.3, 0.9, 3.7}) {
    std::vector<double> xs(50000);
    for (double& x : xs) x = sample_gamma(shape, rng);
    const double d =
        ks_distance(xs, [&](double t) { return t <= 0 ? 0.0 : boost::math::gamma_p(shape, t); });
    CHECK_MESSAGE(d < ks_threshold(xs.size()), "shape " << shape);
  }
  // Log-space variates stay finite where the variate itself underflows.
  for (int i = 0; i < 100; ++i) CHECK(std::isfinite(sample_log_gamma(1e-6, rng)));
}

TEST_CASE("Dirichlet draws lie on the simplex") {
  RngStream rng(6);
  for (std::size_t k : {2u, 3u, 10u, 1000u}) {
    for (double alpha : {1.0 / double(k - 1), 1.0, 1e-4}) {
      for (int t = 0; t < 20; ++t) {
        const auto x = sample_dirichlet(alpha, k, rng);
        REQUIRE(x.size() == k);
        CHECK(std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0; }));
        CHECK(std::abs(std::accumulate(x.begin(), x.end(), 0.0) - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("Dir(1, 1) is (U, 1 - U)") {
  RngStream rng(7);
  std::vector<double> xs(100000);
  for (double& x : xs) {
    const auto d = sample_dirichlet(1.0, 2, rng);
    x = d[0];
  }
  CHECK(ks_distance(xs, [](double t) { return std::clamp(t, 0.0, 1.0); }) < ks_threshold(xs.size()));
}

TEST_CASE("Dir(1/2, 1/2, 1/2) marginal is Beta(1/2, 1)") {
  RngStream rng(8);
  std::vector<double> xs(100000);
  for (double& x : xs) x = sample_dirichlet(0.5, 3, rng)[0];
  const double d = ks_distance(xs, [](double t) { return t <= 0 ? 0.0 : t >= 1 ? 1.0 : boost::math::ibeta(0.5, 1.0, t); });
  CHECK(d < 0.01);
}

TEST_CASE("Dirichlet marginals for several k match Beta(alpha, (k-1) alpha)") {
  RngStream rng(9);
  for (std::size_t k : {3u, 5u, 8u}) {
    const double alpha = 1.0 / double(k - 1);
    std::vector<double> xs(40000);
    for (double& x : xs) x = sample_dirichlet(alpha, k, rng)[k - 1];
    const double b = alpha * double(k - 1);
    const double d = ks_distance(xs, [&](double t) { return t <= 0 ? 0.0 : t >= 1 ? 1.0 : boost::math::ibeta(alpha, b, t); });
    CHECK_MESSAGE(d < ks_threshold(xs.size()), "k " << k);
  }
}

TEST_CASE("Dirichlet argument checks") {
  RngStream rng(10);
  CHECK_THROWS_AS(sample_dirichlet(1.0, 1, rng), Error);
  CHECK_THROWS_AS(sample_dirichlet(0.0, 3, rng), Error);
  CHECK_THROWS_AS(sample_dirichlet(-1.0, 3, rng), Error);
}
