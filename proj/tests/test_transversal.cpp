#include <doctest.h>

#include <cmath>
#include <set>

#include "hypent/error.hpp"
#include "hypent/fuchsian.hpp"
#include "hypent/transversal.hpp"

using namespace hypent;

namespace {

ShiftPoint shift_from(const std::vector<int>& sym, int W) {
  ShiftPoint p;
  p.W = W;
  for (int s : sym) p.symbols.push_back(static_cast<std::uint8_t>(s));
  return p;
}

const std::vector<std::string> kSystems = {"shift:k=2,W=12", "shift:k=3,W=8", "rotation:alpha=0.381966",
                                           "catmap", "perm:n=5"};

}  // namespace

TEST_CASE("system specs") {
  for (const auto& s : kSystems) CHECK(make_system(make_system(s).spec()).spec() == make_system(s).spec());
  CHECK_THROWS_AS(make_system("shift:k=1"), InvalidArgument);
  CHECK_THROWS_AS(make_system("shift:W=0"), InvalidArgument);
  CHECK_THROWS_AS(make_system("rotation"), InvalidArgument);
  CHECK_THROWS_AS(make_system("perm:n=0"), InvalidArgument);
  CHECK_THROWS_AS(make_system("doubling"), InvalidArgument);
  CHECK_THROWS_AS(make_system("shift:k=2,q=3"), InvalidArgument);
  CHECK(make_system("catmap").exact());
  CHECK_FALSE(make_system("rotation:alpha=0.1").exact());
}

TEST_CASE("shift metric examples") {
  const auto sys = make_system("shift:k=2,W=5");
  std::vector<int> x(11, 0), y(11, 0);
  y[5] = 1;  // position 0
  CHECK(distance(sys, shift_from(x, 5), shift_from(y, 5)) == 1.0);
  std::vector<int> z(11, 0);
  z[5 + 3] = 1;
  z[5 - 3] = 1;
  CHECK(distance(sys, shift_from(x, 5), shift_from(z, 5)) == 0.125);
  CHECK(distance(sys, shift_from(x, 5), shift_from(x, 5)) == 0.0);
}

TEST_CASE("catmap action example") {
  const auto sys = make_system("catmap");
  const auto q = std::get<TorusPoint>(apply_map(sys, 0, 1, TorusPoint{0.3, 0.7}));
  CHECK(q.x == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(std::abs(q.y) < 1e-12);
}

TEST_CASE("catmap inverse is exact on dyadic points") {
  // Integer oracle: coordinates as multiples of 2^-40 with matrix
  // arithmetic in Z / 2^40.
  const auto sys = make_system("catmap");
  const std::uint64_t mask = (1ULL << 40) - 1;
  const auto pts = sample_points(sys, 500, 3);
  for (const auto& p : pts) {
    const auto t = std::get<TorusPoint>(p);
    const auto X = static_cast<std::uint64_t>(std::ldexp(t.x, 40));
    const auto Y = static_cast<std::uint64_t>(std::ldexp(t.y, 40));
    CHECK(std::ldexp(static_cast<double>(X), -40) == t.x);
    const auto f = std::get<TorusPoint>(apply_map(sys, 0, 1, p));
    CHECK(f.x == std::ldexp(static_cast<double>((2 * X + Y) & mask), -40));
    CHECK(f.y == std::ldexp(static_cast<double>((X + Y) & mask), -40));
    for (std::int64_t e : {1, 2, 5}) {
      CHECK(apply_map(sys, 0, -e, apply_map(sys, 0, e, p)) == p);
    }
  }
}

TEST_CASE("metric axioms on sampled triples") {
  for (const auto& spec : kSystems) {
    const auto sys = make_system(spec);
    const auto pts = sample_points(sys, 60, 4);
    double worst = 0.0;
    for (std::size_t i = 0; i + 2 < pts.size(); i += 3) {
      const Point &a = pts[i], &b = pts[i + 1], &c = pts[i + 2];
      CHECK(distance(sys, a, a) == 0.0);
      CHECK(distance(sys, a, b) == distance(sys, b, a));
      CHECK(distance(sys, a, b) <= 1.0);
      worst = std::max(worst, distance(sys, a, c) - distance(sys, a, b) - distance(sys, b, c));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("maps round trip") {
  for (const auto& spec : kSystems) {
    const auto sys = make_system(spec);
    const auto pts = sample_points(sys, 50, 5);
    for (std::size_t m = 0; m < sys.maps().size(); ++m) {
      for (const auto& p : pts) {
        const Point q = apply_map(sys, m, -3, apply_map(sys, m, 3, p));
        if (sys.exact()) {
          CHECK(distance(sys, q, p) == 0.0);
        } else {
          CHECK(distance(sys, q, p) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("maps are continuous on samples") {
  for (const auto& spec : {"rotation:alpha=0.381966", "catmap"}) {
    const auto sys = make_system(spec);
    const auto pts = sample_points(sys, 50, 6);
    double worst = 0.0;
    for (const auto& p : pts) {
      Point q = p;
      if (auto* t = std::get_if<TorusPoint>(&q)) t->x = std::fmod(t->x + 1e-9, 1.0);
      if (auto* c = std::get_if<CirclePoint>(&q)) c->x = std::fmod(c->x + 1e-9, 1.0);
      worst = std::max(worst, distance(sys, apply_map(sys, 0, 1, p), apply_map(sys, 0, 1, q)));
    }
    CHECK(worst < 1e-8);
  }
  // Shift: agreement on [-j, j] survives one shift on [-j+1, j-1].
  const auto sys = make_system("shift:k=2,W=12");
  const auto pts = sample_points(sys, 40, 7);
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    const double d = distance(sys, pts[i], pts[i + 1]);
    const double e = distance(sys, apply_map(sys, 0, 1, pts[i]), apply_map(sys, 0, 1, pts[i + 1]));
    CHECK(e <= std::min(1.0, 2.0 * d));
  }
}

TEST_CASE("shift window bookkeeping") {
  const auto sys = make_system("shift:k=2,W=4");
  const auto p = sample_points(sys, 1, 8)[0];
  const auto q = std::get<ShiftPoint>(apply_map(sys, 0, 3, p));
  CHECK(q.lo() == -4);
  CHECK(q.hi() == 1);
  CHECK(q.at(0) == std::get<ShiftPoint>(p).at(3));
  CHECK_THROWS_AS(q.at(2), WindowExhausted);
  CHECK_THROWS_AS(apply_map(sys, 0, 5, p), WindowExhausted);
  CHECK_THROWS_AS(apply_map(sys, 0, 2, apply_map(sys, 0, 3, p)), WindowExhausted);
}

TEST_CASE("representations") {
  const auto sys = make_system("shift:k=2,W=16");
  const Representation rep = parse_representation(sys, 2, "a1=1");
  CHECK(rep.zcase);
  REQUIRE(rep.exponents.size() == 8);
  CHECK(rep.exponents[0] == 1);
  CHECK(rep.exponents[1] == -1);
  for (int i = 2; i < 8; ++i) CHECK(rep.exponents[i] == 0);
  const Representation mixed = parse_representation(sys, 2, "a1=shift^2*flip, b2=flip");
  CHECK_FALSE(mixed.zcase);
  CHECK(mixed.of(0) == Transform{2, 1});
  CHECK(mixed.of(1) == Transform{-2, 1});
  CHECK(mixed.of(6) == Transform{0, 1});
  CHECK_THROWS_AS(parse_representation(sys, 2, "a1=rot"), InvalidArgument);
  CHECK_THROWS_AS(parse_representation(sys, 2, "c1=1"), InvalidArgument);
  const Representation id = identity_representation(sys, 2);
  for (const auto& t : id.transforms) CHECK(t == identity_transform(sys));

  const auto pts = sample_points(sys, 100, 9);
  for (const auto& p : pts) {
    CHECK(apply_word(sys, rep, {}, p) == p);
    CHECK(apply_word(sys, rep, {0, 1}, p) == p);
    CHECK(apply_word(sys, mixed, {0, 1}, p) == p);
    // Exponent sum 3 along a word with detours through trivial letters.
    const std::vector<int> w{0, 2, 0, 3, 4, 0};
    CHECK(apply_word(sys, rep, w, p) == apply_map(sys, 0, 3, p));
    CHECK(word_transform(sys, rep, w) == Transform{3, 0});
  }
}

TEST_CASE("sample points") {
  const auto sys = make_system("catmap");
  CHECK(sample_points(sys, 30, 1) == sample_points(sys, 30, 1));
  CHECK_FALSE(sample_points(sys, 30, 1) == sample_points(sys, 30, 2));
  for (const auto& p : sample_points(sys, 200, 3)) {
    const auto t = std::get<TorusPoint>(p);
    CHECK((t.x >= 0.0 && t.x < 1.0 && t.y >= 0.0 && t.y < 1.0));
  }
  const auto shift = make_system("shift:k=2,W=6");
  const auto ex = exhaustive_shift_points(shift, 1, 1);
  REQUIRE(ex.size() == 8);
  std::set<std::vector<int>> patterns;
  for (const auto& p : ex) {
    const auto& s = std::get<ShiftPoint>(p);
    patterns.insert({s.at(-1), s.at(0), s.at(1)});
  }
  CHECK(patterns.size() == 8);
  CHECK_THROWS_AS(sample_points(sys, 0, 1), InvalidArgument);
}
