#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include "hypent/ballenum.hpp"
#include "hypent/error.hpp"
#include "hypent/reduction.hpp"
#include "hypent/serialize.hpp"

using namespace hypent;

namespace {

const SurfaceGroup& regular2() {
  static const SurfaceGroup g = build_regular(2);
  return g;
}

const GroupBall& ball8() {
  static const GroupBall b = enumerate_ball(regular2(), 8.0);
  return b;
}

}  // namespace

TEST_CASE("radius zero is the identity") {
  const GroupBall b = enumerate_ball(regular2(), 0.0);
  REQUIRE(b.size() == 1);
  CHECK(b.elements[0].word.empty());
  CHECK(b.elements[0].displacement == 0.0);
  CHECK_THROWS_AS(enumerate_ball(regular2(), -1.0), InvalidArgument);
}

TEST_CASE("ball invariants at R=8") {
  const SurfaceGroup& g = regular2();
  const GroupBall& b = ball8();
  CHECK(b.size() == 793);
  CHECK(b.elements[0].word.empty());
  std::set<Fingerprint> fps;
  double worst_word = 0.0, worst_disp = 0.0;
  std::size_t not_inverse_closed = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& e = b.elements[i];
    fps.insert(e.fp);
    worst_word = std::max(worst_word, coefficient_distance(word_product(g, e.word), e.isometry));
    worst_disp = std::max(worst_disp, std::abs(displacement(e.isometry) - e.displacement));
    CHECK(e.displacement <= 8.0);
    if (!b.find(invert(e.isometry))) ++not_inverse_closed;
    if (i > 0) {
      const auto& p = b.elements[i - 1];
      CHECK((p.displacement < e.displacement || (p.displacement == e.displacement && p.fp < e.fp)));
    }
  }
  CHECK(fps.size() == b.size());
  CHECK(worst_word <= 1e-8);
  CHECK(worst_disp <= 1e-10);
  CHECK(not_inverse_closed == 0);
}

TEST_CASE("dual slack agreement at R=8") {
  const SurfaceGroup& g = regular2();
  const GroupBall& b = ball8();
  EnumerationOptions wide;
  wide.slack = default_slack(g) + 1.0;
  const GroupBall w = enumerate_ball(g, 8.0, wide);
  CHECK(w.size() == b.size());
  std::size_t unmatched = 0;
  for (const auto& e : w.elements) unmatched += !b.find(e.isometry).has_value();
  CHECK(unmatched == 0);
  CHECK(w.fingerprints() == b.fingerprints());
}

TEST_CASE("counts against the area ratio") {
  // Tiles of area 4 pi (g - 1) inside a disk of area 4 pi sinh^2(R/2).
  const SurfaceGroup& g = regular2();
  const GroupBall b = enumerate_ball(g, 10.0);
  const double oracle = std::pow(std::sinh(5.0), 2);
  CHECK(std::abs(b.size() - oracle) / oracle < 0.05);
  CHECK(b.size() == 5433);
}

TEST_CASE("growth profile") {
  const GrowthProfile p = growth_profile(regular2(), {0.0, 2.0, 4.0, 6.0, 8.0});
  CHECK(p.counts.front() == 1);
  for (std::size_t i = 1; i < p.counts.size(); ++i) CHECK(p.counts[i] >= p.counts[i - 1]);
  CHECK(p.counts.back() == 793);
  CHECK(p.slope > 0.5);
}

TEST_CASE("budget failure reports the completed radius") {
  EnumerationOptions tight;
  tight.budget = 200;
  try {
    enumerate_ball(regular2(), 8.0, tight);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.completed_radius() >= 0.0);
    CHECK(e.completed_radius() < 8.0);
    const GroupBall partial = enumerate_ball(regular2(), e.completed_radius(), tight);
    CHECK(partial.size() >= 1);
  }
}

TEST_CASE("Dehn cross-check on a small ball") {
  const SurfaceGroup& g = regular2();
  const GroupBall b = enumerate_ball(g, 5.5);
  const DehnReport r = dehn_cross_check(g, b, 5.5);
  CHECK(r.pairs > 1000);
  CHECK(r.violations == 0);
  // The relator itself reduces to the empty word.
  CHECK(dehn_reduce(g.relator, g.relator).empty());
  CHECK(dehn_reduce(invert_word(g.relator), g.relator).empty());
}

TEST_CASE("word balls") {
  const SurfaceGroup& g = regular2();
  const auto w1 = enumerate_word_ball(g, 1);
  CHECK(w1.size() == 9);
  // No relation of length below 8: spheres 2 and 3 are all reduced words.
  // At length 4 each of the 16 cyclic forms of the relator and its inverse
  // glues two reduced words of length 4, one pair per two forms.
  const auto w4 = enumerate_word_ball(g, 4);
  std::size_t sphere[5] = {0, 0, 0, 0, 0};
  for (const auto& e : w4) ++sphere[e.word.size()];
  CHECK(sphere[1] == 8);
  CHECK(sphere[2] == 56);
  CHECK(sphere[3] == 392);
  CHECK(sphere[4] == 8 * 7 * 7 * 7 - 8);
}

TEST_CASE("consistency with locate") {
  const SurfaceGroup& g = regular2();
  const ReductionTable t = build_reduction_table(g);
  const GroupBall b = enumerate_ball(g, 6.0 + g.polygon.circumradius + 1e-6);
  std::size_t missing = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const DiskPoint xi = sample_hyperbolic_disk(6.0, 17, i);
    const Location L = locate(g, t, xi);
    if (!b.find(word_product(g, L.word))) ++missing;
  }
  CHECK(missing == 0);
}

TEST_CASE("deterministic element sets") {
  const GroupBall a = enumerate_ball(regular2(), 7.0);
  const GroupBall b = enumerate_ball(regular2(), 7.0);
  CHECK(a.fingerprints() == b.fingerprints());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.elements[i].word == b.elements[i].word);
}

TEST_CASE("ball cache round trip") {
  const SurfaceGroup& g = regular2();
  const GroupBall& b = ball8();
  const GroupBall c = ball_from_document(g, Json::parse(ball_document(g, b).dump()));
  REQUIRE(c.size() == b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(c.elements[i].isometry == b.elements[i].isometry);
    CHECK(c.elements[i].displacement == b.elements[i].displacement);
    CHECK(c.elements[i].word == b.elements[i].word);
  }
  const SurfaceGroup other = build_degenerate(2, 0.5);
  CHECK_THROWS_AS(ball_from_document(other, ball_document(g, b)), InvalidArgument);
}
