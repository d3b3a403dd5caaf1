#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "sparsemimo/geometry.hpp"
#include "sparsemimo/rng.hpp"

using namespace sparsemimo;

namespace {
double euclid(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}
}  // namespace

TEST_CASE("element indices are symmetric around zero") {
  for (int n : {1, 2, 3, 4, 7, 16}) {
    const auto idx = element_indices(n);
    REQUIRE(idx.size() == static_cast<size_t>(n));
    double sum = 0.0;
    for (double v : idx) sum += v;
    CHECK(sum == doctest::Approx(0.0).epsilon(1e-12));
    for (size_t i = 1; i < idx.size(); ++i)
      CHECK(idx[i] - idx[i - 1] == doctest::Approx(1.0));
  }
  CHECK(element_indices(4)[0] == doctest::Approx(-1.5));
  CHECK(element_indices(3)[0] == doctest::Approx(-1.0));
}

TEST_CASE("array config validation and derived sizes") {
  CHECK_THROWS_AS(ArrayConfig(0, 1.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(ArrayConfig(4, 0.5, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(ArrayConfig(4, 1.0, 0.0), std::invalid_argument);
  const ArrayConfig cfg(8, 3.0, 0.02);
  CHECK(cfg.spacing() == doctest::Approx(0.03));
  CHECK(cfg.aperture() == doctest::Approx(7 * 0.03));
}

TEST_CASE("link geometry validation") {
  CHECK_THROWS_AS(LinkGeometry(0.0), std::invalid_argument);
  CHECK_THROWS_AS(LinkGeometry(10.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(LinkGeometry(10.0, 0.0, -2.0), std::invalid_argument);
  const LinkGeometry geo(10.0, 0.3, -0.2);
  CHECK(geo.cos_nu() == doctest::Approx(std::cos(0.3) * std::cos(0.2)));
}

TEST_CASE("exact distance equals the Euclidean distance between elements") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n_ue = 2 + static_cast<int>(rng.uniform(0.0, 7.0));
    const int n_bs = 2 + static_cast<int>(rng.uniform(0.0, 31.0));
    const double lam = rng.uniform(0.001, 0.1);
    const ArrayPair pair(ArrayConfig(n_ue, rng.uniform(1.0, 5.0), lam),
                         ArrayConfig(n_bs, rng.uniform(1.0, 5.0), lam));
    const LinkGeometry geo(rng.uniform(1.0, 100.0), rng.uniform(-1.0, 1.0),
                           rng.uniform(-1.0, 1.0));
    const auto ue_pts = element_positions(pair.ue, geo, Side::UE);
    const auto bs_pts = element_positions(pair.bs, geo, Side::BS);
    const auto m_idx = element_indices(n_ue);
    const auto n_idx = element_indices(n_bs);
    for (int m = 0; m < n_ue; ++m)
      for (int n = 0; n < n_bs; ++n)
        CHECK(exact_distance(m_idx[m], n_idx[n], pair, geo) ==
              doctest::Approx(euclid(ue_pts[m], bs_pts[n])).epsilon(1e-10));
  }
}

TEST_CASE("center-to-center distance is the link range") {
  const ArrayPair pair(ArrayConfig(5, 2.0, 0.01), ArrayConfig(9, 3.0, 0.01));
  const LinkGeometry geo(25.0, 0.4, -0.1);
  CHECK(exact_distance(0.0, 0.0, pair, geo) == doctest::Approx(25.0));
}

TEST_CASE("distance approximations improve with model order") {
  const ArrayPair pair(ArrayConfig(8, 2.0, 0.01), ArrayConfig(64, 2.0, 0.01));
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const LinkGeometry geo(rng.uniform(5.0, 50.0), rng.uniform(-0.8, 0.8),
                           rng.uniform(-0.8, 0.8));
    const double m = rng.uniform(-3.5, 3.5);
    const double n = rng.uniform(-31.5, 31.5);
    const double exact = exact_distance(m, n, pair, geo);
    const double far = far_distance(m, n, pair, geo);
    const double near = near_distance(m, n, pair, geo);
    CHECK(std::abs(exact - near) <= std::abs(exact - far) + 1e-12);
  }
}

TEST_CASE("far model is asymptotically exact in range") {
  const ArrayPair pair(ArrayConfig(4, 1.5, 0.01), ArrayConfig(32, 2.0, 0.01));
  const LinkGeometry near_geo(10.0, 0.3, 0.1);
  const LinkGeometry far_geo(1e6, 0.3, 0.1);
  const double err_near = std::abs(exact_distance(1.5, 15.5, pair, near_geo) -
                                   far_distance(1.5, 15.5, pair, near_geo));
  const double err_far = std::abs(exact_distance(1.5, 15.5, pair, far_geo) -
                                  far_distance(1.5, 15.5, pair, far_geo));
  CHECK(err_far < 1e-6);
  CHECK(err_far < err_near);
}

TEST_CASE("rayleigh distance formula") {
  const ArrayConfig ue(4, 1.0, 0.01);
  const ArrayConfig bs(16, 2.0, 0.01);
  const double d = ue.aperture() + bs.aperture();
  CHECK(rayleigh_distance(bs, ue) == doctest::Approx(2.0 * d * d / 0.01));
}

TEST_CASE("near/far boundary grows with sparsity and aligns with formula") {
  const LinkGeometry geo(40.0, 0.0, 0.0);
  double prev = 0.0;
  for (double eta : {1.0, 2.0, 4.0, 8.0}) {
    const ArrayPair pair(ArrayConfig(16, 1.0, 0.01),
                         ArrayConfig(128, eta, 0.01));
    const double b = near_far_boundary(pair, geo);
    CHECK(b == doctest::Approx(0.01 * 128 * 15 * eta / 4.0));
    CHECK(b > prev);
    prev = b;
  }
}

TEST_CASE("mismatched wavelengths rejected") {
  CHECK_THROWS_AS(ArrayPair(ArrayConfig(4, 1.0, 0.01),
                            ArrayConfig(8, 1.0, 0.02)),
                  std::invalid_argument);
}
