#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "hypent/ballenum.hpp"
#include "hypent/error.hpp"
#include "hypent/fuchsian.hpp"
#include "hypent/serialize.hpp"
#include "hypent/tiling.hpp"

using namespace hypent;

namespace {

std::size_t occurrences(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("group documents round trip") {
  for (const SurfaceGroup& g : {build_regular(2), build_degenerate(2, 0.2), build_regular(3)}) {
    const Json doc = group_document(g);
    const SurfaceGroup back = group_from_document(Json::parse(doc.dump()));
    CHECK(group_hash(back) == group_hash(g));
    REQUIRE(back.generators.size() == g.generators.size());
    for (std::size_t i = 0; i < g.generators.size(); ++i) {
      CHECK(back.generators[i].map == g.generators[i].map);
      CHECK(back.weight(static_cast<int>(i)) == g.weight(static_cast<int>(i)));
    }
  }
  CHECK(group_hash(build_regular(2)) != group_hash(build_degenerate(2, 0.5)));
  Json bad = group_document(build_regular(2));
  bad["generators"][0]["a"][0] = 17.0;
  CHECK_THROWS_AS(group_from_document(bad), InvalidArgument);
}

TEST_CASE("ball cache") {
  const SurfaceGroup g = build_regular(2);
  const auto dir = (std::filesystem::temp_directory_path() / "hypent-test-cache").string();
  std::filesystem::remove_all(dir);
  const GroupBall a = cached_ball(dir, g, 6.0);
  CHECK(std::filesystem::exists(ball_cache_path(dir, g, 6.0, default_slack(g))));
  const GroupBall b = cached_ball(dir, g, 6.0);
  CHECK(a.fingerprints() == b.fingerprints());
  CHECK(b.size() == enumerate_ball(g, 6.0).size());
  std::filesystem::remove_all(dir);
}

TEST_CASE("tiling render") {
  const SurfaceGroup g = build_regular(2);
  const Tiling t0 = render_tiling(g, 0);
  CHECK(t0.tiles == 1);
  const Tiling t1 = render_tiling(g, 1);
  CHECK(t1.tiles == 9);
  CHECK(t1.svg.rfind("<svg", 0) == 0);
  CHECK(occurrences(t1.svg, "origin-image") == 1);
  CHECK(occurrences(t1.svg, "<path") == 9);
  CHECK(render_tiling(g, 2).tiles == 65);
  CHECK(render_tiling(g, 1).svg == t1.svg);
  TilingStyle plain;
  plain.mark_origin_image = false;
  CHECK(occurrences(render_tiling(g, 1, plain).svg, "origin-image") == 0);
}
