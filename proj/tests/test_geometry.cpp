#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypent/error.hpp"
#include "hypent/geometry.hpp"
#include "support.hpp"

using namespace hypent;
using testsupport::random_isometry;
using testsupport::random_point;

TEST_CASE("poincare distance examples") {
  CHECK(poincare_distance(DiskPoint{}, DiskPoint{}) == 0.0);
  CHECK(poincare_distance(DiskPoint{}, DiskPoint{0.5, 0.0}) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(poincare_distance(DiskPoint{0.5, 0.0}, DiskPoint{-0.5, 0.0}) ==
        doctest::Approx(std::log(9.0)).epsilon(1e-14));
}

TEST_CASE("poincare distance matches the cosh closed form") {
  const CounterRng rng(11, 1);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const DiskPoint p = random_point(rng, 2 * i, 6.0), q = random_point(rng, 2 * i + 1, 6.0);
    const double oracle = testsupport::cosh_distance_oracle(p.z(), q.z());
    CHECK(std::abs(poincare_distance(p, q) - oracle) <= 1e-9 * std::max(1.0, oracle));
  }
}

TEST_CASE("isometry invariance and triangle inequality") {
  const CounterRng rng(12, 1);
  double worst_inv = 0.0, worst_tri = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Isometry m = random_isometry(rng, i);
    const DiskPoint p = random_point(rng, 3 * i + 100000), q = random_point(rng, 3 * i + 100001),
                    r = random_point(rng, 3 * i + 100002);
    worst_inv = std::max(worst_inv, std::abs(poincare_distance(m.apply(p), m.apply(q)) - poincare_distance(p, q)));
    worst_tri = std::max(worst_tri, poincare_distance(p, r) - poincare_distance(p, q) - poincare_distance(q, r));
  }
  CHECK(worst_inv <= 1e-9);
  CHECK(worst_tri <= 1e-9);
}

TEST_CASE("boundary guard") {
  CHECK_THROWS_AS(DiskPoint(1.0, 0.0), NumericError);
  CHECK_NOTHROW(DiskPoint(1.0 - 1e-11, 0.0));
}

TEST_CASE("apply examples") {
  CHECK(Isometry::identity().apply(DiskPoint{0.3, 0.0}).x() == doctest::Approx(0.3));
  const DiskPoint r = Isometry::rotation(std::numbers::pi).apply(DiskPoint{0.5, 0.0});
  CHECK(r.x() == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(std::abs(r.y()) < 1e-15);
  const DiskPoint t = Isometry::translation_to(DiskPoint{0.5, 0.0}).apply(DiskPoint{});
  CHECK(std::abs(t.x() - 0.5) < 1e-15);
  CHECK(Isometry::translation_to(DiskPoint{}) == Isometry::identity());
  const DiskPoint a{0.3, -0.4};
  CHECK(Isometry::translation_to(a).apply(DiskPoint{-0.3, 0.4}).abs() < 1e-15);
}

TEST_CASE("apply agrees with the raw matrix action") {
  const CounterRng rng(13, 1);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Isometry m = random_isometry(rng, i);
    const DiskPoint p = random_point(rng, i + 5000);
    CHECK(std::abs(m.apply(p).z() - testsupport::mobius(m.a, m.b, p.z())) < 1e-12);
    CHECK(std::abs(m.determinant() - 1.0) < 1e-10);
  }
}

TEST_CASE("compose, invert and canonical sign") {
  const CounterRng rng(14, 1);
  for (std::uint64_t i = 0; i < 300; ++i) {
    const Isometry m1 = random_isometry(rng, 3 * i), m2 = random_isometry(rng, 3 * i + 1),
                   m3 = random_isometry(rng, 3 * i + 2);
    const DiskPoint p = random_point(rng, i + 9000, 2.0);
    CHECK(std::abs(compose(m1, m2).apply(p).z() - m1.apply(m2.apply(p)).z()) < 1e-10);
    CHECK(coefficient_distance(compose(m1, invert(m1)), Isometry::identity()) < 1e-10);
    CHECK(coefficient_distance(compose(compose(m1, m2), m3), compose(m1, compose(m2, m3))) < 1e-9);
    CHECK(std::abs(displacement(invert(m1)) - displacement(m1)) < 1e-10);
    const Isometry c = m1.canonical();
    CHECK(c.canonical() == c);
    CHECK((c.a.real() > 0.0 || (c.a.real() == 0.0 && c.a.imag() >= 0.0)));
    // The negated matrix is the same map and must canonicalize identically.
    CHECK(Isometry{-m1.a, -m1.b}.canonical() == c);
  }
  CHECK(invert(Isometry::identity()) == Isometry::identity());
  CHECK(coefficient_distance(invert(Isometry::rotation(0.7)), Isometry::rotation(-0.7)) < 1e-15);
  CHECK(coefficient_distance(compose(Isometry::rotation(0.4), Isometry::rotation(1.1)),
                             Isometry::rotation(1.5)) < 1e-15);
}

TEST_CASE("isometry_matching maps the given pairs") {
  const CounterRng rng(15, 1);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Isometry m = random_isometry(rng, i);
    const DiskPoint p1 = random_point(rng, 2 * i + 300), p2 = random_point(rng, 2 * i + 301);
    const Isometry f = isometry_matching(p1, p2, m.apply(p1), m.apply(p2));
    CHECK(coefficient_distance(f, m) < 1e-8);
  }
}

TEST_CASE("geodesic points") {
  const DiskPoint p{0.2, 0.1}, q{-0.4, 0.5};
  const double d = poincare_distance(p, q);
  const DiskPoint mid = geodesic_midpoint(p, q);
  CHECK(poincare_distance(p, mid) == doctest::Approx(d / 2).epsilon(1e-12));
  CHECK(poincare_distance(mid, q) == doctest::Approx(d / 2).epsilon(1e-12));
  const DiskPoint s = geodesic_point(p, q, 0.3);
  CHECK(poincare_distance(p, s) + poincare_distance(s, q) == doctest::Approx(d).epsilon(1e-12));
}

TEST_CASE("rotation displacement examples") {
  CHECK(rotation_displacement(DiskPoint{0.5, 0.0}, 0.0) == 0.0);
  CHECK(rotation_displacement(DiskPoint{}, std::numbers::pi) == 0.0);
  CHECK(rotation_displacement(DiskPoint{0.5, 0.0}, std::numbers::pi) ==
        doctest::Approx(std::log(9.0)).epsilon(1e-13));
  double prev = 0.0;
  for (int k = 1; k <= 50; ++k) {
    const double v = rotation_displacement(DiskPoint{0.7, 0.0}, std::numbers::pi * k / 50.0);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("rotation lemma regimes on the grid") {
  std::size_t close_checked = 0, far_checked = 0;
  for (int R = 5; R <= 14; ++R) {
    for (double eps : {0.1, 0.05}) {
      const DiskPoint xi = DiskPoint::polar(R, 0.37);
      // Angles on both sides: the closeness regime needs small theta, the
      // separation regime large theta; a log grid covers both.
      for (int k = -60; k <= 10; ++k) {
        const double theta = std::ldexp(1.0, k / 2) * (k % 2 ? 1.5 : 1.0);
        if (theta > std::numbers::pi) continue;
        const double s = std::abs(std::sin(theta / 2.0));
        const double d = rotation_displacement(xi, theta);
        if (std::exp(-R) >= 8.0 / eps * s) {
          CHECK(d <= eps);
          ++close_checked;
        }
        if (std::exp(-R) <= 0.25 / eps * s) {
          CHECK(d >= eps);
          ++far_checked;
        }
      }
    }
  }
  CHECK(close_checked > 100);
  CHECK(far_checked > 100);
}

TEST_CASE("sup orbit distance") {
  const Isometry m = Isometry::translation_to(DiskPoint{0.2, 0.1});
  CHECK(sup_orbit_distance(m, m, 3.0) == 0.0);
  CHECK_THROWS_AS(sup_orbit_distance(m, m, 3.0, 32), InvalidArgument);
  // Rotation reduces to the displacement of boundary-radius points.
  const double theta = 0.01;
  const double v = sup_orbit_distance(Isometry::identity(), Isometry::rotation(theta), 4.0);
  CHECK(v == doctest::Approx(rotation_displacement(DiskPoint::polar(4.0, 0.0), theta)).epsilon(1e-9));
  // Nondecreasing in R and in samples.
  const Isometry n = Isometry::translation_to(DiskPoint{0.21, 0.1});
  double prev = 0.0;
  for (double R : {1.0, 2.0, 3.0, 4.0}) {
    const double s = sup_orbit_distance(m, n, R);
    CHECK(s >= prev - 1e-12);
    prev = s;
  }
  CHECK(sup_orbit_distance(m, n, 3.0, 512) >= sup_orbit_distance(m, n, 3.0, 64) - 1e-12);
}

TEST_CASE("calibrated automorphism constant") {
  CalibrationGrid grid;
  grid.radii = {2.0, 3.0, 4.0};
  grid.base_radii = {0.0, 1.0};
  grid.directions = 4;
  double prev = INFINITY;
  for (double eps : {0.05, 0.1, 0.2}) {
    const AutomorphismCalibration c = calibrate_automorphism_constant(eps, grid);
    CHECK(std::isfinite(c.A));
    CHECK(c.A >= 1.0);
    CHECK(c.A <= prev);
    prev = c.A;
    // Closeness regime at the calibrated constant on the grid radii, for
    // partner directions between the calibration directions.
    for (double R : grid.radii) {
      for (double base : grid.base_radii) {
        const Isometry ta = Isometry::translation_to(DiskPoint::polar(base, 0.3));
        for (int k = 0; k < 4; ++k) {
          const double d = std::exp(-R) / c.A * 0.999;
          const DiskPoint b = ta.apply(DiskPoint::polar(d, (k + 0.5) * std::numbers::pi / 2.0));
          CHECK(sup_orbit_distance(ta, Isometry::translation_to(b), R) <= eps * (1.0 + 1e-6));
        }
      }
    }
  }
}
