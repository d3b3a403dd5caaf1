#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/SVD>
#include <cmath>

#include "doctest.h"
#include "sparsemimo/channel.hpp"
#include "sparsemimo/multiuser.hpp"
#include "sparsemimo/rate.hpp"
#include "sparsemimo/rng.hpp"

using namespace sparsemimo;

namespace {
constexpr double kPi = 3.141592653589793;

// MRT/MRC vectors straight from the dominant singular pair.
void mrt_mrc_vectors(const MatrixXcd& h, VectorXcd& tx, VectorXcd& rx) {
  Eigen::JacobiSVD<MatrixXcd> svd(
      h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  rx = svd.matrixU().col(0);
  tx = svd.matrixV().col(0);
}
}  // namespace

TEST_CASE("beam pattern peaks, nulls, bounds, parity, periodicity") {
  const int n = 64;
  const double eta = 4.0;
  CHECK(beam_pattern(0.0, n, eta) == doctest::Approx(1.0));
  CHECK(beam_pattern(2.0 / (n * eta), n, eta) ==
        doctest::Approx(0.0).epsilon(1e-9));
  for (int k = 1; k <= 3; ++k)
    CHECK(beam_pattern(2.0 * k / eta, n, eta) == doctest::Approx(1.0));
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const double d = rng.uniform(-2.0, 2.0);
    const double g = beam_pattern(d, n, eta);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0 + 1e-12);
    CHECK(g == doctest::Approx(beam_pattern(-d, n, eta)).epsilon(1e-9));
    CHECK(g ==
          doctest::Approx(beam_pattern(d + 2.0 / eta, n, eta)).epsilon(1e-6));
  }
}

TEST_CASE("single user mrt/mrc sinr has no interference") {
  CHECK(mrt_mrc_sinr({0.2}, {3.0}, 8, 64, 2.0, 0) ==
        doctest::Approx(3.0 * 8.0 * 64.0));
}

TEST_CASE("interference vanishes at a beam-pattern null") {
  const int n = 64;
  const double eta = 2.0;
  const double null_delta = 2.0 / (n * eta);
  const double phi0 = 0.1;
  const double phi1 = std::asin(std::sin(phi0) + null_delta);
  const double sinr = mrt_mrc_sinr({phi0, phi1}, {5.0, 5.0}, 8, n, eta, 0);
  CHECK(sinr == doctest::Approx(5.0 * 8.0 * n).epsilon(1e-6));
}

TEST_CASE("general sinr equals the closed mrt/mrc form on far channels") {
  Rng rng(12);
  const int n_ue = 4, n_bs = 32;
  const double eta_bs = 3.0, eta_ue = 2.0;
  const ArrayPair pair(ArrayConfig(n_ue, eta_ue, 0.01),
                       ArrayConfig(n_bs, eta_bs, 0.01));
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
    std::vector<double> bearings(k), tilts(k), snrs(k);
    std::vector<MatrixXcd> channels;
    std::vector<VectorXcd> txs;
    std::vector<VectorXcd> rxs(k);
    for (int i = 0; i < k; ++i) {
      bearings[i] = rng.uniform(-1.2, 1.2);
      tilts[i] = rng.uniform(-1.2, 1.2);
      snrs[i] = rng.uniform(0.1, 10.0);
      const LinkGeometry geo(40.0, bearings[i], tilts[i]);
      channels.push_back(
          los_channel(pair, geo, Complex{1.0, 0.0}, DistanceModel::Far)
              .entries);
      VectorXcd tx, rx;
      mrt_mrc_vectors(channels.back(), tx, rx);
      txs.push_back(tx);
      rxs[i] = rx;
    }
    // Pbar_k = P_k / sigma^2 for unit-gain channels; pick sigma^2 = 2.
    const double sigma2 = 2.0;
    std::vector<double> powers(k);
    for (int i = 0; i < k; ++i) powers[i] = snrs[i] * sigma2;
    for (int i = 0; i < k; ++i) {
      const double lhs = general_sinr(channels, txs, rxs[i], powers, sigma2, i);
      const double rhs = mrt_mrc_sinr(bearings, snrs, n_ue, n_bs, eta_bs, i);
      CHECK(std::abs(lhs - rhs) / rhs < 1e-9);
    }
  }
}

TEST_CASE("general sinr edge cases") {
  const VectorXcd e0 = VectorXcd::Unit(4, 0);
  const VectorXcd e1 = VectorXcd::Unit(4, 1);
  const MatrixXcd h0 = e0 * VectorXcd::Unit(2, 0).adjoint();
  const MatrixXcd h1 = e1 * VectorXcd::Unit(2, 0).adjoint();
  const VectorXcd t = VectorXcd::Unit(2, 0);
  // orthogonal interferer contributes nothing
  CHECK(general_sinr({h0, h1}, {t, t}, e0, {2.0, 5.0}, 1.0, 0) ==
        doctest::Approx(2.0));
  // zero transmit power for the user of interest
  CHECK(general_sinr({h0, h1}, {t, t}, e0, {0.0, 5.0}, 1.0, 0) ==
        doctest::Approx(0.0));
  VectorXcd bad = 2.0 * e0;
  CHECK_THROWS_AS(general_sinr({h0}, {t}, bad, {1.0}, 1.0, 0),
                  std::invalid_argument);
}

TEST_CASE("far sum rate is independent of the UE sparsity and seeded") {
  const UserPlacement placement(20, 40.0, 20.0 * kPi / 180.0,
                                PlacementLaw::UniformSin);
  const std::vector<double> snrs(20, 2.0);
  const double r1 = sum_rate_far(placement, snrs, 8, 64, 3.0, 1.0, 99);
  const double r2 = sum_rate_far(placement, snrs, 8, 64, 3.0, 2.0, 99);
  const double r4 = sum_rate_far(placement, snrs, 8, 64, 3.0, 4.0, 99);
  CHECK(std::abs(r1 - r2) < 1e-9);
  CHECK(std::abs(r1 - r4) < 1e-9);
  CHECK(sum_rate_far(placement, snrs, 8, 64, 3.0, 1.0, 99) == r1);
  CHECK(sum_rate_far(placement, snrs, 8, 64, 3.0, 1.0, 100) != r1);

  const UserPlacement single(1, 40.0, 0.3, PlacementLaw::UniformSin);
  CHECK(sum_rate_far(single, {2.0}, 8, 64, 3.0, 1.0, 7) ==
        doctest::Approx(std::log2(1.0 + 2.0 * 8.0 * 64.0)));
}

TEST_CASE("collision probability against a Monte Carlo oracle") {
  const double alpha = 0.9;
  for (double eta : {1.0, 2.0, 4.0}) {
    for (double phi_deg : {10.0, 30.0}) {
      const int n = 32;
      const double phi_max = phi_deg * kPi / 180.0;
      const double s = std::sin(phi_max);
      const double half_width = alpha / (n * eta);
      Rng rng(31);
      const int trials = 200000;
      int hits = 0;
      for (int t = 0; t < trials; ++t) {
        const double d = rng.uniform(-s, s) - rng.uniform(-s, s);
        for (int k = -static_cast<int>(std::ceil(eta));
             k <= static_cast<int>(std::ceil(eta)); ++k) {
          if (std::abs(d - 2.0 * k / eta) < half_width) {
            ++hits;
            break;
          }
        }
      }
      const double mc = static_cast<double>(hits) / trials;
      const double closed = collision_probability(eta, n, phi_max, alpha);
      CHECK(std::abs(mc - closed) < 0.02);
    }
  }
}

TEST_CASE("collision probability degenerate branch and bounds") {
  // main lobe wider than the whole user support
  CHECK(collision_probability(1.0, 4, std::asin(0.01), 0.9) ==
        doctest::Approx(1.0));
  for (double eta : {1.0, 3.0, 8.0}) {
    const double p = collision_probability(eta, 64, 0.5, 0.91);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
}

TEST_CASE("sparse arrays win inside the advantage interval") {
  const double alpha = 0.9;
  const int n = 64;
  for (double eta : {2.0, 4.0, 8.0}) {
    const auto iv = sparse_advantage_interval(eta, n, alpha);
    CHECK(iv.sin_lo == doctest::Approx(alpha / (2.0 * n * eta)));
    CHECK(iv.sin_hi > iv.sin_lo);
    for (double frac : {0.25, 0.5, 0.75}) {
      const double s = iv.sin_lo + frac * (iv.sin_hi - iv.sin_lo);
      const double phi = std::asin(std::min(s, 1.0));
      CHECK(collision_probability(eta, n, phi, alpha) <
            collision_probability(1.0, n, phi, alpha));
    }
  }
}

TEST_CASE("closed-form rate cdf shape and reductions") {
  TwoLobeBeamFit fit;
  fit.g_main = 0.5;
  fit.g_side = 0.001;
  fit.alpha = 0.9;
  const int n_bs = 64;
  const double eta = 4.0;
  const double s_max = std::sin(20.0 * kPi / 180.0);
  const double pbar = 10.0;

  double prev = 0.0;
  for (double r = 0.05; r < 12.0; r += 0.05) {
    const double f = rate_cdf_closed(r, 20, pbar, fit, n_bs, eta, s_max);
    CHECK(f >= prev - 1e-12);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    prev = f;
  }
  // K = 1: no interference randomness below the single-user rate
  const double single = std::log2(1.0 + pbar * n_bs);
  CHECK(rate_cdf_closed(single * 0.9, 1, pbar, fit, n_bs, eta, s_max) == 0.0);
  CHECK(rate_cdf_closed(single * 1.1, 1, pbar, fit, n_bs, eta, s_max) == 1.0);
}

TEST_CASE("rate cdf binomial reduction at T = 0") {
  TwoLobeBeamFit fit;
  fit.g_main = 0.5;
  fit.g_side = 0.0;
  fit.alpha = 0.9;
  const int k = 20, n_bs = 64;
  const double eta = 4.0, s_max = 0.3, pbar = 10.0;
  const double p = collision_probability(eta, n_bs, std::asin(s_max), 0.9);
  // pick R so that Y/(G_m - G_s) lands in [0, 1)
  double found = -1.0;
  for (double r = 0.1; r < 12.0; r += 0.001) {
    const double y = 1.0 / (std::pow(2.0, r) - 1.0) - 1.0 / (pbar * n_bs);
    const double t = std::floor(y / 0.5);
    if (t == 0.0) {
      found = r;
      break;
    }
  }
  REQUIRE(found > 0.0);
  CHECK(rate_cdf_closed(found, k, pbar, fit, n_bs, eta, s_max) ==
        doctest::Approx(1.0 - std::pow(1.0 - p, k - 1)).epsilon(1e-12));
}

TEST_CASE("near-field user rate reduces to single-user capacity") {
  Rng rng(8);
  MatrixXcd m(16, 4);
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = rng.std_complex_normal();
  ChannelMatrix h;
  h.entries = m;
  const PowerBudget budget(4.0, 0.5);
  CHECK(near_field_user_rate({h}, budget, 0) ==
        doctest::Approx(rate_no_csit(m, budget)).epsilon(1e-9));
  CHECK(sum_rate_near({h}, budget) ==
        doctest::Approx(rate_no_csit(m, budget)).epsilon(1e-9));
}

TEST_CASE("near-field rate decreases as interference scales up") {
  Rng rng(9);
  auto draw = [&rng]() {
    ChannelMatrix h;
    h.entries = MatrixXcd(16, 4);
    for (int r = 0; r < 16; ++r)
      for (int c = 0; c < 4; ++c) h.entries(r, c) = rng.std_complex_normal();
    return h;
  };
  for (int trial = 0; trial < 10; ++trial) {
    auto h0 = draw();
    auto h1 = draw();
    const PowerBudget budget(2.0, 1.0);
    const double base = near_field_user_rate({h0, h1}, budget, 0);
    auto boosted = h1;
    boosted.entries *= 2.0;
    const double worse = near_field_user_rate({h0, boosted}, budget, 0);
    CHECK(worse <= base + 1e-12);
    CHECK(base > 0.0);
  }
}

TEST_CASE("zero channels carry zero rate") {
  ChannelMatrix z;
  z.entries = MatrixXcd::Zero(8, 2);
  const PowerBudget budget(1.0, 1.0);
  CHECK(sum_rate_near({z, z}, budget) == doctest::Approx(0.0));
}

TEST_CASE("angle difference histogram is triangular and seeded") {
  const UserPlacement placement(2, 40.0, std::asin(0.5),
                                PlacementLaw::UniformSin);
  const auto h1 = angle_diff_histogram(placement, 41, 200000, 5);
  const auto h2 = angle_diff_histogram(placement, 41, 200000, 5);
  REQUIRE(h1.bin_edges.size() == 42);
  REQUIRE(h1.density.size() == 41);
  CHECK(h1.density == h2.density);

  double integral = 0.0;
  const double width = h1.bin_edges[1] - h1.bin_edges[0];
  for (double d : h1.density) integral += d * width;
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-9));

  const double center = h1.density[20];
  // density at the half-support point is about half the center
  const double half = h1.density[30];
  CHECK(center > half);
  CHECK(half / center == doctest::Approx(0.5).epsilon(0.15));
  CHECK(h1.density.front() < 0.1 * center);
}

TEST_CASE("placement validation") {
  CHECK_THROWS_AS(UserPlacement(0, 40.0, 0.3, PlacementLaw::UniformSin),
                  std::invalid_argument);
  CHECK_THROWS_AS(UserPlacement(2, 40.0, 0.0, PlacementLaw::UniformSin),
                  std::invalid_argument);
}
