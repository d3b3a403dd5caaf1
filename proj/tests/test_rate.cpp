#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "doctest.h"
#include "sparsemimo/channel.hpp"
#include "sparsemimo/rate.hpp"
#include "sparsemimo/rng.hpp"

using namespace sparsemimo;

namespace {
MatrixXcd random_matrix(int rows, int cols, Rng& rng) {
  MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rng.std_complex_normal();
  return m;
}

std::vector<double> svals(const MatrixXcd& h) {
  Eigen::JacobiSVD<MatrixXcd> svd(h);
  return {svd.singularValues().data(),
          svd.singularValues().data() + svd.singularValues().size()};
}
}  // namespace

TEST_CASE("no-CSIT rate matches a direct determinant oracle") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n_bs = 3 + static_cast<int>(rng.uniform(0.0, 10.0));
    const int n_ue = 2 + static_cast<int>(rng.uniform(0.0, 6.0));
    const auto h = random_matrix(n_bs, n_ue, rng);
    const PowerBudget budget(rng.uniform(0.1, 10.0), rng.uniform(0.1, 2.0));
    const MatrixXcd inner =
        MatrixXcd::Identity(n_bs, n_bs) +
        (budget.total_power / (n_ue * budget.noise_power)) * h * h.adjoint();
    const double oracle = std::log2(std::abs(inner.determinant()));
    CHECK(rate_no_csit(h, budget) == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("water-filling satisfies the optimality conditions") {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform(0.0, 8.0));
    std::vector<double> s(n);
    for (auto& v : s) v = rng.uniform(0.01, 3.0);
    const PowerBudget budget(rng.uniform(0.1, 20.0), 1.0);
    const auto powers = waterfill(s, budget);
    REQUIRE(powers.size() == s.size());

    double total = 0.0;
    for (double p : powers) total += p;
    CHECK(total == doctest::Approx(budget.total_power).epsilon(1e-9));

    // common water level on active channels; inactive channels lie above it
    double level = -1.0;
    for (size_t i = 0; i < s.size(); ++i) {
      const double inv_gain = budget.noise_power / (s[i] * s[i]);
      if (powers[i] > 1e-12) {
        const double mu = powers[i] + inv_gain;
        if (level < 0.0)
          level = mu;
        else
          CHECK(mu == doctest::Approx(level).epsilon(1e-9));
      } else {
        CHECK(inv_gain >= level - 1e-9);
      }
    }
  }
}

TEST_CASE("water-filling dominates equal power") {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> s(6);
    for (auto& v : s) v = rng.uniform(0.01, 2.0);
    const PowerBudget budget(rng.uniform(0.01, 30.0), 1.0);
    CHECK(waterfill_rate(s, budget) >= rate_equal_power(s, budget) - 1e-9);
  }
  CHECK_THROWS_AS(waterfill({0.0, 0.0}, PowerBudget(1.0, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("x_opt solves its defining equation and tracks 2/sqrt(C)") {
  for (double c : {1.0, 1e2, 1e4, 1e6, 3.7, 123.0}) {
    const double x = x_opt(c);
    const double y = c * x * x;
    CHECK(2.0 * y / (1.0 + y) ==
          doctest::Approx(std::log1p(y)).epsilon(1e-8));
    CHECK(std::abs(x - x_opt_approx(c)) / x_opt_approx(c) < 0.02);
  }
  CHECK_THROWS_AS(x_opt(0.0), std::invalid_argument);
}

TEST_CASE("rate function is unimodal in the edof variable") {
  const double c = 1e4;
  auto r = [c](double x) { return std::log2(1.0 + c * x * x) / x; };
  const double peak = x_opt(c);
  bool rising = true;
  double prev = 0.0;
  for (int i = 1; i <= 400; ++i) {
    const double x = peak * 0.02 * i;
    const double v = r(x);
    if (rising && v < prev) rising = false;
    if (!rising) CHECK(v <= prev + 1e-12);
    prev = v;
  }
  CHECK(!rising);  // the peak sits inside the grid
}

TEST_CASE("regime classification, boundaries, and continuity") {
  const int n_ue = 8, n_bs = 64;
  const double lo = 4.0 / (8.0 * 64.0);
  const double hi = 4.0 * 8.0 / 64.0;

  CHECK(max_rate_regime(n_ue, n_bs, lo / 2.0).regime == SnrRegime::Low);
  CHECK(max_rate_regime(n_ue, n_bs, hi * 2.0).regime == SnrRegime::High);
  CHECK(max_rate_regime(n_ue, n_bs, (lo + hi) / 2.0).regime == SnrRegime::Mid);
  // boundary ties resolve to the mid branch and the expressions agree there
  const auto at_lo = max_rate_regime(n_ue, n_bs, lo);
  CHECK(at_lo.regime == SnrRegime::Mid);
  CHECK(at_lo.max_rate == doctest::Approx(std::log2(1.0 + 8.0 * 64.0 * lo)));
  const auto at_hi = max_rate_regime(n_ue, n_bs, hi);
  CHECK(at_hi.regime == SnrRegime::Mid);
  CHECK(at_hi.max_rate ==
        doctest::Approx(8.0 * std::log2(1.0 + 64.0 * hi / 8.0)));
  CHECK(at_hi.optimal_edof == doctest::Approx(8.0));
}

TEST_CASE("edof-approximate rate formula") {
  CHECK(rate_edof_approx(4.0, 8, 64, 0.5) ==
        doctest::Approx(4.0 * std::log2(1.0 + 8.0 * 64.0 * 0.5 / 16.0)));
  CHECK_THROWS_AS(rate_edof_approx(0.5, 8, 64, 1.0), std::invalid_argument);
}

TEST_CASE("sparsity selection follows the regime") {
  const LinkGeometry geo(40.0, 0.0, 0.0);
  LobeFit fit;
  fit.alpha = 1.0;
  fit.g_high = 0.5 * 128.0 * 128.0;
  fit.g_low = 20.0;

  const auto low = select_sparsity(16, 128, geo, 1e-5, fit, 0.01);
  CHECK(low.regime == SnrRegime::Low);
  CHECK(low.eta == doctest::Approx(1.0));

  const auto high = select_sparsity(16, 128, geo, 10.0, fit, 0.01);
  CHECK(high.regime == SnrRegime::High);
  CHECK(high.eta == doctest::Approx(4.0 * 40.0 / (0.01 * 128.0)));

  const auto mid = select_sparsity(16, 128, geo, 0.01, fit, 0.01);
  CHECK(mid.regime == SnrRegime::Mid);
  CHECK(mid.eta >= 1.0);
  CHECK(mid.eta <= high.eta + 1e-9);
  CHECK(mid.eta_bs * mid.eta_ue == doctest::Approx(mid.eta));

  const auto split = select_sparsity(16, 128, geo, 10.0, fit, 0.01, 0.5);
  CHECK(split.eta_ue == doctest::Approx(std::sqrt(split.eta)));
}
