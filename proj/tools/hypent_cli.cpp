// hypent: experiment runner for hyperbolic entropy of suspensions.
//
// Exit codes: 0 success, 1 a checked inequality or invariant failed,
// 2 bad input or a resource/budget limit was hit.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypent/ballenum.hpp"
#include "hypent/entropy.hpp"
#include "hypent/error.hpp"
#include "hypent/fuchsian.hpp"
#include "hypent/kernels.hpp"
#include "hypent/reduction.hpp"
#include "hypent/rng.hpp"
#include "hypent/serialize.hpp"
#include "hypent/tiling.hpp"
#include "hypent/transversal.hpp"
#include "hypent/zcase.hpp"

using namespace hypent;

namespace {

struct Common {
  int genus = 2;
  std::string mode = "regular";
  double group_eps = 0.1;
  std::uint64_t seed = 1;
  std::string out = "out";
  std::string cache = ".hypent-cache";
  std::size_t budget = kDefaultBudget;
};

struct Grid {
  double R_max = 12.0;
  double step = 0.5;
  std::vector<double> eps;

  std::vector<double> R() const {
    std::vector<double> g;
    const int n = static_cast<int>(std::floor(R_max / step + 1e-9));
    for (int i = 0; i <= n; ++i) g.push_back(i * step);
    return g;
  }
};

SurfaceGroup make_group(const Common& c) {
  if (c.mode == "regular") return build_regular(c.genus);
  if (c.mode == "degenerate") return build_degenerate(c.genus, c.group_eps);
  throw InvalidArgument("unknown group mode '" + c.mode + "'");
}

Json common_json(const Common& c) {
  return {{"genus", c.genus}, {"mode", c.mode}, {"group_eps", c.group_eps}, {"seed", c.seed},
          {"budget", c.budget}, {"kernels", kernels::active().name}};
}

std::string out_path(const Common& c, const std::string& name) {
  std::filesystem::create_directories(c.out);
  return (std::filesystem::path(c.out) / name).string();
}

void emit(const Common& c, const std::string& name, const Json& doc) {
  const std::string text = doc.dump(2) + "\n";
  write_text(out_path(c, name), text);
  std::cout << text;
}

std::string csv_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

int cmd_group_build(const Common& c) {
  const SurfaceGroup g = make_group(c);
  Json doc = group_document(g);
  doc["spec"] = common_json(c);
  emit(c, "group.json", doc);
  return diagnose(g).ok() ? 0 : 1;
}

int cmd_ball(const Common& c, double R, double slack, bool dual) {
  const SurfaceGroup g = make_group(c);
  EnumerationOptions opts;
  opts.budget = c.budget;
  if (slack > 0.0) opts.slack = slack;
  const GroupBall ball = cached_ball(c.cache, g, R, opts);
  Json doc;
  doc["spec"] = common_json(c);
  doc["R"] = R;
  doc["slack"] = ball.slack;
  doc["elements"] = ball.size();
  doc["explored"] = ball.explored;
  doc["max_word_length"] = ball.max_word_length();
  doc["cache"] = ball_cache_path(c.cache, g, R, ball.slack);
  int code = 0;
  if (dual) {
    EnumerationOptions wide = opts;
    wide.slack = ball.slack + 1.0;
    const GroupBall other = enumerate_ball(g, R, wide);
    std::size_t unmatched = 0;
    for (const auto& e : other.elements) unmatched += !ball.find(e.isometry).has_value();
    const bool same = ball.size() == other.size() && unmatched == 0;
    doc["dual_slack"] = {{"slack", *wide.slack},
                         {"elements", other.size()},
                         {"unmatched", unmatched},
                         {"identical_fingerprints", ball.fingerprints() == other.fingerprints()},
                         {"agree", same}};
    if (!same) code = 1;
  }
  emit(c, "ball.json", doc);
  return code;
}

int cmd_tiles(const Common& c, std::size_t depth, const std::string& svg) {
  const SurfaceGroup g = make_group(c);
  const Tiling t = render_tiling(g, depth);
  const std::string path = svg.empty() ? out_path(c, "tiles.svg") : svg;
  write_text(path, t.svg);
  std::cout << "wrote " << path << " (" << t.tiles << " tiles)\n";
  return 0;
}

int cmd_inclusions(const Common& c, double delta, std::size_t samples, std::vector<std::size_t> N,
                   std::size_t depth) {
  const SurfaceGroup g = make_group(c);
  EnumerationOptions opts;
  opts.budget = c.budget;
  const ReductionTable tab = build_reduction_table(g, opts);
  if (N.empty()) {
    for (std::size_t n = 10; n <= 240; n += 10) N.push_back(n);
  }
  const InclusionReport rep = verify_inclusions(g, tab, delta, N, samples, depth, c.seed);
  Json doc;
  doc["spec"] = common_json(c);
  doc["delta"] = delta;
  doc["K"] = tab.K;
  doc["N0"] = tab.N0;
  doc["delta0"] = tab.delta0;
  for (const auto& l : rep.levels) {
    doc["levels"].push_back({{"N", l.N}, {"radius", l.radius}, {"samples", l.samples},
                             {"violations", l.violations}, {"max_length", l.max_length}});
  }
  doc["left_violations"] = rep.left_violations;
  doc["word_depth"] = rep.word_depth;
  doc["tiles"] = rep.tiles;
  doc["weighted_violations"] = rep.weighted_violations;
  doc["weighted_worst_margin"] = rep.weighted_worst_margin;
  doc["outer_violations_diagnostic"] = rep.outer_violations;
  doc["ok"] = rep.ok();
  emit(c, "inclusions.json", doc);
  return rep.ok() ? 0 : 1;
}

struct ZSetup {
  SurfaceGroup group;
  GroupBall ball;
  ReductionTable table;
  TransversalSystem sys;
  Representation rep;
};

ZSetup z_setup(const Common& c, const std::string& system, const std::string& assign, double R) {
  ZSetup s;
  s.group = make_group(c);
  EnumerationOptions opts;
  opts.budget = c.budget;
  s.ball = cached_ball(c.cache, s.group, R, opts);
  s.table = build_reduction_table(s.group, opts);
  s.sys = make_system(system);
  s.rep = parse_representation(s.sys, s.group.genus, assign);
  return s;
}

int cmd_k0(const Common& c, const std::string& system, const std::string& assign, const Grid& grid) {
  const ZSetup s = z_setup(c, system, assign, grid.R_max);
  if (!s.rep.zcase) throw InvalidArgument("k0 needs an assignment by powers of the primary map");
  const K0Estimate est = k0_estimate(s.group, s.ball, s.rep.exponents, grid.R(), &s.table);
  std::ostringstream csv;
  csv << "R,n,running_sup\n";
  for (std::size_t i = 0; i < est.R_grid.size(); ++i) {
    csv << csv_double(est.R_grid[i]) << ',' << est.n[i] << ',' << csv_double(est.running_sup[i]) << '\n';
  }
  write_text(out_path(c, "k0.csv"), csv.str());
  Json doc;
  doc["spec"] = common_json(c);
  doc["system"] = s.sys.spec();
  doc["assign"] = assign;
  doc["k0"] = k0_document(est);
  emit(c, "k0.json", doc);
  const bool ok = est.superadditivity_violations == 0 && est.monotonicity_violations == 0 &&
                  est.k1_lower_violations == 0 && est.k1_upper_violations == 0;
  return ok ? 0 : 1;
}

SuspensionOptions suspension_options(const Common& c, const Grid& grid, std::size_t samples,
                                     int half_width) {
  SuspensionOptions o;
  o.R_grid = grid.R();
  o.eps = grid.eps;
  o.samples = samples;
  o.exhaustive_half_width = half_width;
  o.seed = c.seed;
  return o;
}

Json suspension_json(const SuspensionReport& r) {
  return {{"h_T0", r.h_T0},
          {"h_F", r.h_F},
          {"h_omega", r.h_omega},
          {"h_glw", r.h_glw},
          {"Kprime", r.Kprime},
          {"c1", r.c1},
          {"c2", r.c2},
          {"complete", r.complete},
          {"sandwich_ok", r.sandwich_ok},
          {"bracket_ok", r.bracket_ok},
          {"gamma", estimate_document(r.est_gamma)},
          {"weighted", estimate_document(r.est_weighted)},
          {"glw", estimate_document(r.est_glw)}};
}

void write_counts(const Common& c, const SuspensionReport& r) {
  write_text(out_path(c, "counts_gamma.csv"), counts_csv({r.gamma}));
  write_text(out_path(c, "counts_weighted.csv"), counts_csv({r.weighted}));
  write_text(out_path(c, "counts_glw.csv"), counts_csv({r.glw}));
}

int cmd_entropy(const Common& c, const std::string& system, const std::string& assign,
                const Grid& grid, std::size_t samples, int half_width) {
  const ZSetup s = z_setup(c, system, assign, grid.R_max);
  const SuspensionReport r = suspension_entropy(s.sys, s.rep, s.group, s.ball, s.table.Kprime,
                                                suspension_options(c, grid, samples, half_width));
  write_counts(c, r);
  Json doc;
  doc["spec"] = common_json(c);
  doc["system"] = s.sys.spec();
  doc["assign"] = assign;
  doc["grid"] = {{"R_max", grid.R_max}, {"step", grid.step}, {"samples", samples},
                 {"half_width", half_width}, {"tolerance", 0.05}};
  doc["entropy"] = suspension_json(r);
  emit(c, "entropy.json", doc);
  return r.complete && r.sandwich_ok && r.bracket_ok ? 0 : 1;
}

int cmd_zcase(const Common& c, const std::string& system, const std::string& assign,
              const Grid& grid, std::size_t samples, int half_width) {
  const ZSetup s = z_setup(c, system, assign, grid.R_max);
  if (!s.rep.zcase) throw InvalidArgument("zcase check needs an assignment by powers of the primary map");
  const K0Estimate k0 = k0_estimate(s.group, s.ball, s.rep.exponents, grid.R(), &s.table);
  const SuspensionReport r = suspension_entropy(s.sys, s.rep, s.group, s.ball, s.table.Kprime,
                                                suspension_options(c, grid, samples, half_width));
  write_counts(c, r);
  const double htop = reference_htop(s.sys);
  const double x = 2.0 * k0.certified * htop;
  const double formula = casz_formula(k0.certified, htop);
  bool running_monotone = true;
  for (std::size_t i = 1; i < r.est_gamma.running.size(); ++i) {
    running_monotone = running_monotone && r.est_gamma.running[i] >= r.est_gamma.running[i - 1];
  }
  const bool in_bracket = r.h_T0 >= 0.5 * x && r.h_T0 <= 1.5 * x;
  Json doc;
  doc["spec"] = common_json(c);
  doc["system"] = s.sys.spec();
  doc["assign"] = assign;
  doc["grid"] = {{"R_max", grid.R_max}, {"step", grid.step}, {"samples", samples},
                 {"half_width", half_width}};
  doc["k0"] = k0_document(k0);
  doc["htop"] = htop;
  doc["h_F"] = r.h_F;
  doc["formula_2_plus_2K0_htop"] = formula;
  doc["x"] = x;
  doc["h_T0_in_half_to_three_halves_x"] = in_bracket;
  doc["running_nondecreasing"] = running_monotone;
  doc["entropy"] = suspension_json(r);
  emit(c, "zcase.json", doc);
  return r.complete && in_bracket && running_monotone && r.sandwich_ok && r.bracket_ok ? 0 : 1;
}

std::vector<double> parse_probabilities(const std::string& text) {
  std::vector<double> p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) p.push_back(std::stod(item));
  return p;
}

int cmd_bk(const Common& c, const std::string& ptext, std::int64_t n, std::int64_t m,
           std::size_t samples) {
  const std::vector<double> p = parse_probabilities(ptext);
  const double h = bernoulli_entropy(p);
  const int W = static_cast<int>(n + m);
  // Symbols drawn from p by inversion of the cumulative distribution.
  const CounterRng rng(c.seed, 0xb4);
  std::ostringstream csv;
  csv << "sample,neg_log_measure,per_n,corrected\n";
  double mean_per_n = 0.0, mean_corrected = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    ShiftPoint t;
    t.W = W;
    t.symbols.resize(2 * W + 1);
    for (int i = 0; i <= 2 * W; ++i) {
      const double u = rng.uniform(s * (2 * W + 1) + i);
      double acc = 0.0;
      std::uint8_t sym = static_cast<std::uint8_t>(p.size() - 1);
      for (std::size_t k = 0; k < p.size(); ++k) {
        acc += p[k];
        if (u < acc) {
          sym = static_cast<std::uint8_t>(k);
          break;
        }
      }
      t.symbols[i] = sym;
    }
    const BrinKatokValue v = brin_katok_two_sided(p, t, n, m);
    csv << s << ',' << csv_double(v.neg_log_measure) << ',' << csv_double(v.per_n) << ','
        << csv_double(v.corrected) << '\n';
    mean_per_n += v.per_n / static_cast<double>(samples);
    mean_corrected += v.corrected / static_cast<double>(samples);
  }
  write_text(out_path(c, "bk.csv"), csv.str());
  const double bias = static_cast<double>(2 * (n + m) + 1) / static_cast<double>(n);
  Json doc;
  doc["spec"] = common_json(c);
  doc["p"] = p;
  doc["n"] = n;
  doc["m"] = m;
  doc["samples"] = samples;
  doc["h_nu"] = h;
  doc["mean_corrected"] = mean_corrected;
  doc["mean_per_n"] = mean_per_n;
  doc["bias_factor"] = bias;
  doc["corrected_rel_error"] = std::abs(mean_corrected - h) / h;
  doc["per_n_vs_biased_2h_rel_error"] = std::abs(mean_per_n - h * bias) / (h * bias);
  emit(c, "bk.json", doc);
  return 0;
}

int cmd_noninvariance(const Common& c, double eps) {
  const SurfaceGroup regular = build_regular(c.genus);
  EnumerationOptions opts;
  opts.budget = c.budget;
  const ReductionTable tab = build_reduction_table(regular, opts);
  const SurfaceGroup degenerate = build_degenerate(c.genus, eps);
  const NonInvariance r = noninvariance_bounds(regular, tab.Kprime, degenerate, std::log(2.0));
  Json doc;
  doc["spec"] = common_json(c);
  doc["eps"] = eps;
  doc["eps_limit"] = r.eps_limit;
  doc["eps_admissible"] = eps < r.eps_limit;
  doc["omega1"] = r.omega1;
  doc["Kprime"] = r.Kprime;
  doc["omega2"] = r.omega2;
  doc["schedule_step"] = degenerate.schedule_step;
  doc["upper"] = r.upper;
  doc["lower"] = r.lower;
  doc["ok"] = r.ok;
  emit(c, "noninvariance.json", doc);
  return r.ok && eps < r.eps_limit ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic entropy of suspension laminations"};
  app.set_config("--config", "", "TOML experiment config; flags override it");
  app.require_subcommand(1);
  Common c;
  app.add_option("--genus", c.genus, "Surface genus")->check(CLI::Range(2, 8));
  app.add_option("--mode", c.mode, "Group mode: regular or degenerate");
  app.add_option("--group-eps", c.group_eps, "Target distinguished weight for degenerate groups");
  app.add_option("--seed", c.seed, "Experiment seed");
  app.add_option("--out", c.out, "Output directory");
  app.add_option("--cache", c.cache, "Ball cache directory");
  app.add_option("--budget", c.budget, "Element budget for enumeration");

  auto* group = app.add_subcommand("group", "Surface group documents");
  group->require_subcommand(1);
  auto* build = group->add_subcommand("build", "Emit the group document");

  double ball_R = 8.0, ball_slack = 0.0;
  bool ball_dual = false;
  auto* ball = app.add_subcommand("ball", "Enumerate and cache a group ball");
  ball->add_option("--R", ball_R, "Radius");
  ball->add_option("--slack", ball_slack, "Pruning slack (default: circumradius)");
  ball->add_flag("--dual", ball_dual, "Also enumerate with one more unit of slack and compare");

  std::size_t depth = 2;
  std::string svg;
  auto* tiles = app.add_subcommand("tiles", "SVG tiling by word length");
  tiles->add_option("--depth", depth, "Maximal word length");
  tiles->add_option("--svg", svg, "Output file");

  auto* verify = app.add_subcommand("verify", "Geometric inclusion checks");
  verify->require_subcommand(1);
  double delta = 0.1;
  std::size_t inc_samples = 10000, inc_depth = 6;
  std::vector<std::size_t> inc_N;
  auto* inclusions = verify->add_subcommand("inclusions", "Covering sandwich and weighted inclusion");
  inclusions->add_option("--delta", delta, "Sandwich slack");
  inclusions->add_option("--samples", inc_samples, "Samples per N");
  inclusions->add_option("--N", inc_N, "Word lengths to test");
  inclusions->add_option("--depth", inc_depth, "Word depth for the weighted inclusion");

  std::string system = "shift:k=2,W=64", assign = "a1=1";
  Grid grid;
  std::size_t samples = 4000;
  int half_width = 7;
  auto add_system = [&](CLI::App* sub) {
    sub->add_option("--system", system, "Transversal system");
    sub->add_option("--assign", assign, "Generator assignment, e.g. a1=1");
    sub->add_option("--R-max", grid.R_max, "Largest radius");
    sub->add_option("--step", grid.step, "Radius step");
  };
  auto add_nets = [&](CLI::App* sub) {
    sub->add_option("--eps", grid.eps, "Scale sweep (default per system)");
    sub->add_option("--samples", samples, "Sample points for continuous systems");
    sub->add_option("--half-width", half_width, "Exhaustive pattern half width for shifts");
  };
  auto* k0 = app.add_subcommand("k0", "n(R) and the K0 lower bound");
  add_system(k0);
  auto* entropy = app.add_subcommand("entropy", "Entropy estimates");
  entropy->require_subcommand(1);
  auto* transversal = entropy->add_subcommand("transversal", "Nets, slopes and brackets");
  add_system(transversal);
  add_nets(transversal);
  auto* zcase = app.add_subcommand("zcase", "Z-case checks");
  zcase->require_subcommand(1);
  auto* zcheck = zcase->add_subcommand("check", "End-to-end formula comparison");
  add_system(zcheck);
  add_nets(zcheck);

  std::string bk_p = "0.5,0.5";
  std::int64_t bk_n = 100, bk_m = 2;
  std::size_t bk_samples = 100;
  auto* bk = app.add_subcommand("bk", "Two-sided Brin-Katok tables on Bernoulli shifts");
  bk->add_option("--p", bk_p, "Probability vector");
  bk->add_option("--n", bk_n, "Bowen length");
  bk->add_option("--m", bk_m, "Scale exponent, eps = 2^-m");
  bk->add_option("--samples", bk_samples, "Random points");

  double ni_eps = 0.09;
  auto* ni = app.add_subcommand("noninvariance", "Bound comparison for a degenerate group");
  ni->add_option("--eps", ni_eps, "Distinguished weight target");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return cmd_group_build(c);
    if (ball->parsed()) return cmd_ball(c, ball_R, ball_slack, ball_dual);
    if (tiles->parsed()) return cmd_tiles(c, depth, svg);
    if (inclusions->parsed()) return cmd_inclusions(c, delta, inc_samples, inc_N, inc_depth);
    if (k0->parsed()) return cmd_k0(c, system, assign, grid);
    if (transversal->parsed()) return cmd_entropy(c, system, assign, grid, samples, half_width);
    if (zcheck->parsed()) return cmd_zcase(c, system, assign, grid, samples, half_width);
    if (bk->parsed()) return cmd_bk(c, bk_p, bk_n, bk_m, bk_samples);
    if (ni->parsed()) return cmd_noninvariance(c, ni_eps);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << " (completed radius " << e.completed_radius() << ")\n";
    return 2;
  } catch (const ConstructionFailure& e) {
    std::cerr << "construction failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
