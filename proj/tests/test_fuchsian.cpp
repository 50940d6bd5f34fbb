#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypent/ballenum.hpp"
#include "hypent/error.hpp"
#include "hypent/fuchsian.hpp"
#include "hypent/reduction.hpp"
#include "support.hpp"

using namespace hypent;

namespace {

const SurfaceGroup& regular2() {
  static const SurfaceGroup g = build_regular(2);
  return g;
}

const ReductionTable& table2() {
  static const ReductionTable t = build_reduction_table(regular2());
  return t;
}

}  // namespace

TEST_CASE("regular genus-2 group") {
  const SurfaceGroup& g = regular2();
  CHECK(g.polygon.size() == 8);
  CHECK(std::abs(g.polygon.angle_sum - 2.0 * std::numbers::pi) <= 1e-9);
  CHECK(g.relator_residual() <= 1e-6);
  CHECK(g.relator.size() == 8);
  for (int i = 0; i < g.rank(); ++i) {
    CHECK(std::abs(g.weight(i) - g.weight(0)) <= 1e-9);
    CHECK(g.weight(i) >= 1e-3);
  }
  for (double a : g.polygon.angles) CHECK(a == doctest::Approx(2.0 * std::numbers::pi / 8.0).epsilon(1e-9));
  const GroupDiagnostics d = diagnose(g);
  CHECK(d.ok());
  CHECK(d.side_match_error <= 1e-9);
  CHECK(d.inverse_weight_error <= 1e-10);
  CHECK(d.convex);
  // Frozen from an independent run of the construction; guards regressions.
  CHECK(g.polygon.diameter == doctest::Approx(4.896905).epsilon(1e-6));
  CHECK(g.weight(0) == doctest::Approx(3.057142).epsilon(1e-6));
}

TEST_CASE("regular polygon vertex radius satisfies the angle oracle") {
  // For a regular n-gon with interior angle beta, cosh of the circumradius
  // is cot(pi / n) cot(beta / 2).
  for (int genus : {2, 3}) {
    const SurfaceGroup g = build_regular(genus);
    const int n = 4 * genus;
    const double beta = 2.0 * std::numbers::pi / n;
    const double oracle = std::acosh(1.0 / std::tan(std::numbers::pi / n) / std::tan(beta / 2.0));
    CHECK(g.polygon.circumradius == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(g.relator_residual() <= 1e-6);
  }
}

TEST_CASE("generators map their side onto the paired side") {
  const SurfaceGroup& g = regular2();
  for (const auto& gen : g.generators) {
    const DiskPoint p = g.polygon.vertex(gen.side_from), q = g.polygon.vertex(gen.side_from + 1);
    const DiskPoint P = g.polygon.vertex(gen.side_to), Q = g.polygon.vertex(gen.side_to + 1);
    // Orientation reversed: the start of one side goes to the end of the other.
    CHECK(std::abs(gen.map.apply(p).z() - Q.z()) <= 1e-9);
    CHECK(std::abs(gen.map.apply(q).z() - P.z()) <= 1e-9);
  }
  for (int i = 0; i < g.rank(); ++i) {
    CHECK(coefficient_distance(compose(g.map(i), g.map(inverse_generator(i))), Isometry::identity()) <= 1e-10);
  }
}

TEST_CASE("generator labels") {
  CHECK(generator_label(2, 0) == "a1");
  CHECK(generator_label(2, 1) == "A1");
  CHECK(generator_label(2, 2) == "b1");
  CHECK(generator_label(2, 7) == "B2");
  for (int i = 0; i < 8; ++i) CHECK(parse_generator(generator_label(2, i), 2) == i);
  CHECK_THROWS_AS(parse_generator("c1", 2), InvalidArgument);
  CHECK_THROWS_AS(parse_generator("a3", 2), InvalidArgument);
  CHECK(free_reduce({0, 1, 2, 4, 5, 3}) == std::vector<int>{});
  CHECK(free_reduce({0, 2, 3, 6}) == std::vector<int>{0, 6});
}

TEST_CASE("degenerate family") {
  const int g = 2;
  for (double eps : {0.5, 0.2, 0.1}) {
    const SurfaceGroup d = build_degenerate(g, eps);
    CHECK(d.weight(d.distinguished) <= eps);
    CHECK(std::abs(2.0 * d.nu + (4 * g - 2) * d.mu - 2.0 * std::numbers::pi) <= 1e-12);
    CHECK(std::abs(d.polygon.angle_sum - 2.0 * std::numbers::pi) <= 1e-9);
    CHECK(d.relator_residual() <= 1e-6);
    CHECK(diagnose(d).ok());
    // Bound through the midpoint of the side [A_1 A_2].
    const DiskPoint B2 = geodesic_midpoint(d.polygon.vertex(0), d.polygon.vertex(1));
    CHECK(d.weight(d.distinguished) <= 2.0 * poincare_distance(DiskPoint{}, B2) + 1e-12);
    CHECK(d.nu == doctest::Approx(std::numbers::pi - std::ldexp(1.0, -d.schedule_step)));
  }
  CHECK_THROWS_AS(build_degenerate(2, 0.0), InvalidArgument);
  CHECK_THROWS_AS(build_degenerate(2, 1.5), InvalidArgument);
  // The schedule cannot reach this in double precision.
  CHECK_THROWS_AS(build_degenerate(2, 1e-9), ConstructionFailure);
}

TEST_CASE("polygon membership") {
  const SurfaceGroup& g = regular2();
  CHECK(contains(g.polygon, DiskPoint{}));
  for (const auto& v : g.polygon.vertices) CHECK(contains(g.polygon, v));
  for (int k = 0; k < 64; ++k) {
    const DiskPoint far = DiskPoint::polar(g.polygon.diameter + 1.0, 2.0 * std::numbers::pi * k / 64.0);
    CHECK_FALSE(contains(g.polygon, far));
  }
}

TEST_CASE("reduction table") {
  const SurfaceGroup& g = regular2();
  const ReductionTable& t = table2();
  CHECK(t.betas.front().word.empty());
  CHECK(t.betas.front().displacement == 0.0);
  CHECK(t.K >= 1);
  CHECK(t.Kprime == doctest::Approx(t.K * g.R0));
  CHECK(std::isfinite(t.Kprime));
  // Every generator sits in B with a length-one word.
  for (int i = 0; i < g.rank(); ++i) {
    bool found = false;
    for (const auto& b : t.betas) {
      if (b.word.size() == 1 && coefficient_distance(b.isometry, g.map(i)) <= 1e-8) found = true;
    }
    CHECK(found);
  }
  // Closed under inversion, words reproduce isometries.
  std::size_t missing = 0;
  for (const auto& b : t.betas) {
    CHECK(coefficient_distance(word_product(g, b.word), b.isometry) <= 1e-8);
    bool inv = false;
    for (const auto& c : t.betas) {
      if (std::abs(c.displacement - b.displacement) < 1e-9 &&
          coefficient_distance(c.isometry, invert(b.isometry)) <= 1e-8) {
        inv = true;
        break;
      }
    }
    missing += !inv;
  }
  CHECK(missing == 0);
  MESSAGE("B " << t.betas.size() << " K " << t.K << " K' " << t.Kprime << " N0 " << t.N0 << " net N0 "
               << t.N0_net);
}

TEST_CASE("reduce_step drops distance by one") {
  const SurfaceGroup& g = regular2();
  const ReductionTable& t = table2();
  const CounterRng rng(21, 1);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const double d = t.delta0 + 2.0;
    const DiskPoint xi = DiskPoint::polar(d, 2.0 * std::numbers::pi * rng.uniform(i));
    const ReductionStep s = reduce_step(t, xi);
    CHECK(poincare_distance(t.betas[s.beta].isometry.image_of_origin(), xi) <= d - 1.0 + 1e-9);
    CHECK(poincare_distance(DiskPoint{}, s.next) <= t.delta0 + 1.0 + 1e-9);
    // Lowest qualifying index.
    for (std::size_t k = 0; k < s.beta; ++k) {
      CHECK(poincare_distance(t.betas[k].isometry.image_of_origin(), xi) > d - 1.0 - 1e-9);
    }
  }
  CHECK_THROWS_AS(reduce_step(t, DiskPoint{}), InvalidArgument);
  (void)g;
}

TEST_CASE("locate round trip and word bound") {
  const SurfaceGroup& g = regular2();
  const ReductionTable& t = table2();
  const Location o = locate(g, t, DiskPoint{});
  CHECK(o.word.empty());
  CHECK(o.zeta.abs() < 1e-15);
  for (int i = 0; i < g.rank(); ++i) {
    const Location L = locate(g, t, g.map(i).image_of_origin());
    CHECK(coefficient_distance(word_product(g, L.word), g.map(i)) <= 1e-8);
  }
  std::size_t worst_excess = 0;
  double worst_err = 0.0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const DiskPoint xi = sample_hyperbolic_disk(10.0, 3, i);
    const Location L = locate(g, t, xi);
    worst_err = std::max(worst_err, std::abs(word_product(g, L.word).apply(L.zeta).z() - xi.z()));
    CHECK(contains(g.polygon, L.zeta));
    const std::size_t bound = location_word_bound(t, xi);
    if (L.word.size() > bound) worst_excess = std::max(worst_excess, L.word.size() - bound);
  }
  CHECK(worst_err <= 1e-8);
  CHECK(worst_excess == 0);
}

TEST_CASE("tiles have disjoint interiors") {
  const SurfaceGroup& g = regular2();
  const ReductionTable& t = table2();
  const GroupBall ball = enumerate_ball(g, 8.0 + g.polygon.circumradius);
  std::size_t tested = 0, overlaps = 0;
  for (std::uint64_t i = 0; tested < 1000 && i < 100000; ++i) {
    const DiskPoint xi = sample_hyperbolic_disk(6.0, 4, i);
    const Location L = locate(g, t, xi);
    if (inner_margin(g.polygon, L.zeta) <= 1e-6) continue;
    ++tested;
    const Isometry gamma = word_product(g, L.word);
    for (const auto& e : ball.elements) {
      if (e.displacement > poincare_distance(DiskPoint{}, xi) + g.polygon.circumradius + 1e-6) break;
      if (coefficient_distance(e.isometry, gamma) <= 1e-6) continue;
      if (contains(g.polygon, invert(e.isometry).apply(xi))) ++overlaps;
    }
  }
  CHECK(tested == 1000);
  CHECK(overlaps == 0);
}

TEST_CASE("weighted inclusion and sandwich") {
  const SurfaceGroup& g = regular2();
  const ReductionTable& t = table2();
  const InclusionReport rep = verify_inclusions(g, t, 0.05, {20, 100, 200}, 300, 4, 9);
  CHECK(rep.left_violations == 0);
  CHECK(rep.weighted_violations == 0);
  CHECK(rep.weighted_worst_margin >= 0.0);
  CHECK(rep.tiles > 1);
}
