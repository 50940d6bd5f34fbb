#include "hypent/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypent/error.hpp"

namespace hypent {

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }
Complex json_complex(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

Json finite(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::uint64_t group_hash(const SurfaceGroup& group) {
  std::ostringstream s;
  s.precision(17);
  s << group.genus << '|' << group.mode << '|' << group.eps << '|' << group.nu;
  for (const auto& g : group.generators) {
    s << '|' << g.map.a.real() << ',' << g.map.a.imag() << ',' << g.map.b.real() << ','
      << g.map.b.imag();
  }
  return fnv1a(s.str());
}

Json group_document(const SurfaceGroup& group) {
  Json doc;
  doc["genus"] = group.genus;
  doc["mode"] = group.mode;
  doc["eps"] = group.eps;
  doc["nu"] = group.nu;
  doc["mu"] = group.mu;
  doc["schedule_step"] = group.schedule_step;
  doc["hash"] = hex(group_hash(group));
  Json poly;
  for (const auto& v : group.polygon.vertices) poly["vertices"].push_back(Json::array({v.x(), v.y()}));
  poly["angles"] = group.polygon.angles;
  poly["angle_sum"] = group.polygon.angle_sum;
  poly["diameter"] = group.polygon.diameter;
  poly["circumradius"] = group.polygon.circumradius;
  doc["polygon"] = poly;
  for (const auto& g : group.generators) {
    doc["generators"].push_back({{"label", g.label},
                                 {"a", complex_json(g.map.a)},
                                 {"b", complex_json(g.map.b)},
                                 {"side_from", g.side_from},
                                 {"side_to", g.side_to},
                                 {"weight", g.weight}});
  }
  doc["relator"] = word_to_string(group, group.relator);
  doc["R0"] = group.R0;
  doc["min_weight"] = group.min_weight;
  doc["distinguished"] = generator_label(group.genus, group.distinguished);
  const GroupDiagnostics d = diagnose(group);
  doc["diagnostics"] = {{"angle_sum_error", d.angle_sum_error},
                        {"relator_residual", d.relator_residual},
                        {"side_match_error", d.side_match_error},
                        {"inverse_weight_error", d.inverse_weight_error},
                        {"convex", d.convex},
                        {"ok", d.ok()}};
  return doc;
}

SurfaceGroup group_from_document(const Json& doc) {
  const int genus = doc.at("genus").get<int>();
  const std::string mode = doc.at("mode").get<std::string>();
  SurfaceGroup g;
  if (mode == "regular") {
    g = build_regular(genus);
  } else if (mode == "degenerate") {
    g = build_degenerate(genus, doc.at("eps").get<double>());
  } else {
    throw InvalidArgument("group document: unknown mode '" + mode + "'");
  }
  const auto& gens = doc.at("generators");
  if (gens.size() != g.generators.size()) throw InvalidArgument("group document: generator count mismatch");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    // Stored digits round-trip exactly; renormalizing would lose them for
    // the large coefficients of degenerate groups.
    const Isometry stored{json_complex(gens[i].at("a")), json_complex(gens[i].at("b"))};
    if (coefficient_distance(stored, g.generators[i].map) > 1e-12) {
      throw InvalidArgument("group document: generator " + g.generators[i].label +
                            " differs from the rebuilt group");
    }
  }
  return g;
}

Json ball_document(const SurfaceGroup& group, const GroupBall& ball) {
  Json doc;
  doc["group_hash"] = hex(group_hash(group));
  doc["R"] = ball.R;
  doc["slack"] = ball.slack;
  doc["quantum"] = ball.quantum;
  doc["explored"] = ball.explored;
  doc["duplicate_hits"] = ball.duplicate_hits;
  Json elems = Json::array();
  for (const auto& e : ball.elements) {
    elems.push_back(Json::array({e.word, e.isometry.a.real(), e.isometry.a.imag(), e.isometry.b.real(),
                                 e.isometry.b.imag(), e.displacement}));
  }
  doc["elements"] = std::move(elems);
  return doc;
}

GroupBall ball_from_document(const SurfaceGroup& group, const Json& doc) {
  if (doc.at("group_hash").get<std::string>() != hex(group_hash(group))) {
    throw InvalidArgument("ball document belongs to a different group");
  }
  GroupBall ball;
  ball.R = doc.at("R").get<double>();
  ball.slack = doc.at("slack").get<double>();
  ball.quantum = doc.at("quantum").get<double>();
  ball.explored = doc.at("explored").get<std::size_t>();
  ball.duplicate_hits = doc.at("duplicate_hits").get<std::size_t>();
  for (const auto& row : doc.at("elements")) {
    GroupElement e;
    e.word = row.at(0).get<std::vector<int>>();
    e.isometry = Isometry{Complex{row.at(1).get<double>(), row.at(2).get<double>()},
                          Complex{row.at(3).get<double>(), row.at(4).get<double>()}};
    e.displacement = row.at(5).get<double>();
    e.fp = fingerprint(e.isometry, ball.quantum);
    ball.elements.push_back(std::move(e));
  }
  return ball;
}

std::string ball_cache_path(const std::string& dir, const SurfaceGroup& group, double R,
                            double slack) {
  std::ostringstream s;
  s.precision(17);
  s << hex(group_hash(group)) << '|' << R << '|' << slack;
  return (std::filesystem::path(dir) / ("ball-" + hex(fnv1a(s.str())) + ".json")).string();
}

GroupBall cached_ball(const std::string& dir, const SurfaceGroup& group, double R,
                      const EnumerationOptions& opts) {
  const double slack = opts.slack.value_or(default_slack(group));
  const std::string path = ball_cache_path(dir, group, R, slack);
  if (std::filesystem::exists(path)) {
    try {
      GroupBall ball = ball_from_document(group, Json::parse(read_text(path)));
      if (ball.R == R && ball.slack == slack) return ball;
    } catch (const Json::exception&) {
      // Unreadable cache entries are rebuilt below.
    }
  }
  GroupBall ball = enumerate_ball(group, R, opts);
  std::filesystem::create_directories(dir);
  write_text(path, ball_document(group, ball).dump());
  return ball;
}

Json estimate_document(const EntropyEstimate& est) {
  Json doc;
  doc["R_grid"] = est.R_grid;
  doc["eps"] = est.eps;
  Json slopes = Json::array(), res = Json::array();
  for (double s : est.slope) slopes.push_back(finite(s));
  for (double r : est.residual) res.push_back(finite(r));
  doc["slope"] = slopes;
  doc["residual"] = res;
  doc["complete"] = est.complete;
  doc["fitted_points"] = est.fitted;
  std::size_t sat = 0;
  for (bool b : est.saturated) sat += b;
  doc["saturated_cells"] = sat;
  doc["summary"] = est.summary;
  doc["raw_summary"] = est.raw_summary;
  doc["running"] = est.running;
  doc["samples"] = est.samples;
  doc["seed"] = est.seed;
  return doc;
}

Json k0_document(const K0Estimate& est) {
  return {{"R_grid", est.R_grid},
          {"n", est.n},
          {"running_sup", est.running_sup},
          {"generator_bound", est.generator_bound},
          {"superadditivity_violations", est.superadditivity_violations},
          {"monotonicity_violations", est.monotonicity_violations},
          {"k1_lower_violations", est.k1_lower_violations},
          {"k1_upper_violations", est.k1_upper_violations},
          {"certified_lower_bound", est.certified},
          {"stability", est.stability},
          {"stable", est.stable}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace hypent
