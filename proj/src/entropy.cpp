#include "hypent/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hypent/error.hpp"
#include "hypent/fit.hpp"

namespace hypent {

// ---- transformation sets -------------------------------------------------

std::vector<Transform> reachable_transformations(const TransversalSystem& sys,
                                                 const Representation& rep,
                                                 const std::vector<double>& weights, double R,
                                                 std::size_t budget) {
  if (!(R >= 0.0)) throw InvalidArgument("reachable_transformations: R must be nonnegative");
  if (weights.size() != rep.transforms.size()) {
    throw InvalidArgument("reachable_transformations: one weight per generator required");
  }
  const double limit = R + 1e-12;
  std::map<Transform, double> best;
  using Entry = std::pair<double, Transform>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
  const Transform id = identity_transform(sys);
  best[id] = 0.0;
  queue.emplace(0.0, id);
  while (!queue.empty()) {
    auto [w, t] = queue.top();
    queue.pop();
    if (w > best[t]) continue;
    for (std::size_t g = 0; g < rep.transforms.size(); ++g) {
      const double nw = w + weights[g];
      if (nw > limit) continue;
      Transform next = add(sys, t, rep.of(static_cast<int>(g)));
      if (next == t) continue;
      auto it = best.find(next);
      if (it != best.end() && it->second <= nw) continue;
      if (it == best.end() && best.size() >= budget) {
        throw BudgetExceeded("weighted word set exceeded the transformation budget", 0.0);
      }
      best[next] = nw;
      queue.emplace(nw, std::move(next));
    }
  }
  std::vector<Transform> out;
  out.reserve(best.size());
  for (const auto& kv : best) out.push_back(kv.first);
  return out;
}

std::vector<Transform> gamma_transformations(const TransversalSystem& sys,
                                             const Representation& rep, const GroupBall& ball,
                                             double R) {
  if (R > ball.R + 1e-12) throw InvalidArgument("gamma_transformations: R beyond the ball radius");
  std::set<Transform> out;
  for (const auto& e : ball.elements) {
    if (e.displacement > R) break;
    out.insert(word_transform(sys, rep, e.word));
  }
  return {out.begin(), out.end()};
}

std::vector<Transform> power_transformations(const TransversalSystem& sys, std::int64_t n,
                                             bool two_sided) {
  if (n < 0) throw InvalidArgument("power_transformations: n must be nonnegative");
  std::set<Transform> out;
  for (std::int64_t i = two_sided ? -n : 0; i <= n; ++i) {
    Transform t = identity_transform(sys);
    t[0] = i;
    out.insert(normalize(sys, std::move(t)));
  }
  return {out.begin(), out.end()};
}

std::vector<double> group_weights(const SurfaceGroup& group) {
  std::vector<double> w;
  for (const auto& g : group.generators) w.push_back(g.weight);
  return w;
}

std::vector<double> unit_weights(const SurfaceGroup& group) {
  return std::vector<double>(group.generators.size(), 1.0);
}

BowenFamily weighted_family(const TransversalSystem& sys, const Representation& rep,
                            std::vector<double> weights, std::string name) {
  return {std::move(name), [sys, rep, weights = std::move(weights)](double R) {
            return reachable_transformations(sys, rep, weights, R);
          }};
}

BowenFamily gamma_family(const TransversalSystem& sys, const Representation& rep,
                         const GroupBall& ball) {
  return {"gamma", [sys, rep, &ball](double R) { return gamma_transformations(sys, rep, ball, R); }};
}

BowenFamily power_family(const TransversalSystem& sys, bool two_sided) {
  return {two_sided ? "two-sided" : "one-sided", [sys, two_sided](double n) {
            return power_transformations(sys, static_cast<std::int64_t>(std::floor(n + 1e-12)),
                                         two_sided);
          }};
}

double bowen_distance(const TransversalSystem& sys, const std::vector<Transform>& transforms,
                      const Point& t, const Point& s) {
  double best = 0.0;
  for (const auto& T : transforms) {
    best = std::max(best, distance(sys, apply(sys, T, t), apply(sys, T, s)));
  }
  return best;
}

double bowen_distance_weighted(const TransversalSystem& sys, const Representation& rep,
                               const std::vector<double>& weights, double R, const Point& t,
                               const Point& s) {
  return bowen_distance(sys, reachable_transformations(sys, rep, weights, R), t, s);
}

double bowen_distance_gamma(const TransversalSystem& sys, const Representation& rep,
                            const GroupBall& ball, const Point& t, const Point& s) {
  return bowen_distance(sys, gamma_transformations(sys, rep, ball, ball.R), t, s);
}

// ---- embeddings ----------------------------------------------------------

double Embedding::distance(std::size_t i, std::size_t j) const {
  return distance(i, j, kernels::active());
}

double Embedding::distance(std::size_t i, std::size_t j, const kernels::KernelTable& kern) const {
  if (symbolic) {
    const std::uint8_t mc =
        kern.min_mismatch_cost(symbols.data() + i * dim, symbols.data() + j * dim, cost.data(), dim);
    return mc == 255 ? 0.0 : std::ldexp(1.0, -static_cast<int>(mc));
  }
  return kern.max_circle_distance(coords.data() + i * dim, coords.data() + j * dim, dim);
}

Embedding embed(const TransversalSystem& sys, const std::vector<Point>& points,
                const std::vector<Transform>& transforms, int resolution) {
  if (transforms.empty()) throw InvalidArgument("embed: empty transformation set");
  Embedding e;
  e.count = points.size();
  switch (sys.kind) {
    case SystemKind::FullShift: {
      if (resolution < 0 || resolution > 250) throw InvalidArgument("embed: bad resolution");
      e.symbolic = true;
      std::int64_t jmin = transforms.front()[0], jmax = jmin;
      for (const auto& t : transforms) {
        jmin = std::min(jmin, t[0]);
        jmax = std::max(jmax, t[0]);
      }
      const std::int64_t first = jmin - resolution, last = jmax + resolution;
      e.dim = static_cast<std::size_t>(last - first + 1);
      e.cost.assign(e.dim, 255);
      std::vector<std::int64_t> shifts;
      for (const auto& t : transforms) shifts.push_back(t[0]);
      std::sort(shifts.begin(), shifts.end());
      for (std::int64_t p = first; p <= last; ++p) {
        auto it = std::lower_bound(shifts.begin(), shifts.end(), p);
        std::int64_t c = 1 << 30;
        if (it != shifts.end()) c = std::min(c, *it - p);
        if (it != shifts.begin()) c = std::min(c, p - *(it - 1));
        e.cost[static_cast<std::size_t>(p - first)] =
            static_cast<std::uint8_t>(c > resolution ? 255 : c);
      }
      e.symbols.resize(e.count * e.dim);
      for (std::size_t i = 0; i < e.count; ++i) {
        const auto& sp = std::get<ShiftPoint>(points[i]);
        if (first < sp.lo() || last > sp.hi()) {
          throw WindowExhausted("shift window too small for the Bowen family: need [" +
                                std::to_string(first) + ", " + std::to_string(last) + "]");
        }
        for (std::int64_t p = first; p <= last; ++p) {
          e.symbols[i * e.dim + static_cast<std::size_t>(p - first)] = sp.at(static_cast<int>(p));
        }
      }
      break;
    }
    case SystemKind::FinitePermutation: {
      if (sys.n > 255) throw InvalidArgument("embed: permutation too large for byte symbols");
      // The cycle is a bijection, so every Bowen distance is the discrete metric.
      e.symbolic = true;
      e.dim = 1;
      e.cost.assign(1, 0);
      for (const auto& p : points) e.symbols.push_back(static_cast<std::uint8_t>(std::get<PermPoint>(p).v));
      break;
    }
    case SystemKind::CircleRotation:
    case SystemKind::CatMap: {
      const std::size_t per = sys.kind == SystemKind::CatMap ? 2 : 1;
      e.dim = per * transforms.size();
      e.coords.resize(e.count * e.dim);
      for (std::size_t i = 0; i < e.count; ++i) {
        for (std::size_t k = 0; k < transforms.size(); ++k) {
          const Point q = apply(sys, transforms[k], points[i]);
          double* out = e.coords.data() + i * e.dim + per * k;
          if (per == 2) {
            out[0] = std::get<TorusPoint>(q).x;
            out[1] = std::get<TorusPoint>(q).y;
          } else {
            out[0] = std::get<CirclePoint>(q).x;
          }
        }
      }
      break;
    }
  }
  return e;
}

// ---- greedy nets ---------------------------------------------------------

std::vector<std::size_t> greedy_separated(std::size_t n, const DistanceFn& dist, double eps) {
  if (n == 0) throw InvalidArgument("greedy_separated: no points");
  if (!(eps > 0.0)) throw InvalidArgument("greedy_separated: eps must be positive");
  std::vector<std::size_t> centers;
  for (std::size_t i = 0; i < n; ++i) {
    bool far = true;
    for (std::size_t c : centers) {
      if (dist(c, i) < eps) {
        far = false;
        break;
      }
    }
    if (far) centers.push_back(i);
  }
  return centers;
}

namespace {

// Greedy max coverage on the eps-neighbourhood graph, then removal of
// redundant centers in reverse pick order.
std::vector<std::size_t> greedy_cover_graph(std::size_t n, const DistanceFn& dist, double eps) {
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> rows(n * words, 0);
  auto set = [&](std::size_t i, std::size_t j) { rows[i * words + j / 64] |= 1ULL << (j % 64); };
  for (std::size_t i = 0; i < n; ++i) {
    set(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist(i, j) < eps) {
        set(i, j);
        set(j, i);
      }
    }
  }
  std::vector<std::uint64_t> uncovered(words, ~0ULL);
  if (n % 64) uncovered.back() = (1ULL << (n % 64)) - 1;
  auto gain = [&](std::size_t i) {
    std::size_t g = 0;
    for (std::size_t w = 0; w < words; ++w) g += std::popcount(rows[i * words + w] & uncovered[w]);
    return g;
  };
  // Max gain first, lowest index on ties.
  using Entry = std::pair<std::size_t, std::size_t>;
  auto worse = [](const Entry& a, const Entry& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);
  for (std::size_t i = 0; i < n; ++i) queue.emplace(gain(i), i);
  std::vector<std::size_t> picked;
  std::size_t remaining = n;
  while (remaining > 0 && !queue.empty()) {
    auto [g, i] = queue.top();
    queue.pop();
    const std::size_t fresh = gain(i);
    if (fresh == 0) continue;
    if (!queue.empty() && worse(Entry{fresh, i}, queue.top())) {
      queue.emplace(fresh, i);
      continue;
    }
    picked.push_back(i);
    remaining -= fresh;
    for (std::size_t w = 0; w < words; ++w) uncovered[w] &= ~rows[i * words + w];
  }
  std::vector<std::uint32_t> hits(n, 0);
  for (std::size_t c : picked) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[c * words + j / 64] >> (j % 64) & 1ULL) ++hits[j];
    }
  }
  std::vector<bool> keep(picked.size(), true);
  for (std::size_t k = picked.size(); k-- > 0;) {
    const std::size_t c = picked[k];
    bool redundant = true;
    for (std::size_t j = 0; j < n && redundant; ++j) {
      if ((rows[c * words + j / 64] >> (j % 64) & 1ULL) && hits[j] < 2) redundant = false;
    }
    if (!redundant) continue;
    keep[k] = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[c * words + j / 64] >> (j % 64) & 1ULL) --hits[j];
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < picked.size(); ++k) {
    if (keep[k]) out.push_back(picked[k]);
  }
  return out;
}

constexpr std::size_t kCoverGraphLimit = 20000;

std::vector<std::size_t> ultrametric_classes(const Embedding& e, double eps) {
  std::vector<std::size_t> positions;
  for (std::size_t p = 0; p < e.dim; ++p) {
    if (e.cost[p] != 255 && std::ldexp(1.0, -static_cast<int>(e.cost[p])) >= eps) positions.push_back(p);
  }
  std::unordered_map<std::string, std::size_t> first;
  std::vector<std::size_t> out;
  std::string key(positions.size(), '\0');
  for (std::size_t i = 0; i < e.count; ++i) {
    for (std::size_t k = 0; k < positions.size(); ++k) {
      key[k] = static_cast<char>(e.symbols[i * e.dim + positions[k]]);
    }
    if (first.emplace(key, i).second) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> greedy_cover(std::size_t n, const DistanceFn& dist, double eps) {
  auto separated = greedy_separated(n, dist, eps);
  if (n > kCoverGraphLimit) return separated;
  auto cover = greedy_cover_graph(n, dist, eps);
  return cover.size() <= separated.size() ? cover : separated;
}

std::vector<std::size_t> greedy_separated_scan(const Embedding& e, double eps,
                                               const kernels::KernelTable& kern) {
  return greedy_separated(
      e.count, [&](std::size_t i, std::size_t j) { return e.distance(i, j, kern); }, eps);
}

std::vector<std::size_t> greedy_separated(const Embedding& e, double eps) {
  if (e.count == 0) throw InvalidArgument("greedy_separated: no points");
  if (!(eps > 0.0)) throw InvalidArgument("greedy_separated: eps must be positive");
  if (e.symbolic) return ultrametric_classes(e, eps);
  return greedy_separated_scan(e, eps, kernels::active());
}

std::vector<std::size_t> greedy_cover(const Embedding& e, double eps) {
  if (e.count == 0) throw InvalidArgument("greedy_cover: no points");
  if (!(eps > 0.0)) throw InvalidArgument("greedy_cover: eps must be positive");
  // Open eps-balls are exactly the classes, so no cover can be smaller.
  if (e.symbolic) return ultrametric_classes(e, eps);
  const auto& kern = kernels::active();
  return greedy_cover(
      e.count, [&](std::size_t i, std::size_t j) { return e.distance(i, j, kern); }, eps);
}

bool is_separated(std::size_t, const std::vector<std::size_t>& set, const DistanceFn& dist,
                  double eps) {
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (dist(set[a], set[b]) < eps) return false;
    }
  }
  return true;
}

bool is_cover(std::size_t n, const std::vector<std::size_t>& set, const DistanceFn& dist,
              double eps) {
  for (std::size_t i = 0; i < n; ++i) {
    bool hit = false;
    for (std::size_t c : set) {
      if (dist(c, i) < eps) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

// ---- count tables --------------------------------------------------------

namespace {

int resolution_for(const std::vector<double>& eps) {
  int res = 0;
  for (double e : eps) res = std::max(res, static_cast<int>(std::ceil(-std::log2(e) - 1e-12)));
  return res;
}

}  // namespace

CountsTable count_table(const TransversalSystem& sys, const std::vector<Point>& points,
                        const BowenFamily& family, const std::vector<double>& R_grid,
                        const std::vector<double>& eps, const CountOptions& opts) {
  if (points.empty()) throw InvalidArgument("count_table: no points");
  CountsTable table;
  table.system = sys.spec();
  table.family = family.name;
  table.samples = points.size();
  table.R_grid = R_grid;
  table.eps = eps;
  const int res = opts.resolution > 0 ? opts.resolution : resolution_for(eps);
  std::vector<Transform> previous;
  std::vector<CountCell> previous_cells;
  for (double R : R_grid) {
    const auto transforms = family.at(R);
    if (!previous_cells.empty() && transforms == previous) {
      for (auto cell : previous_cells) {
        cell.R = R;
        table.cells.push_back(cell);
      }
      continue;
    }
    const Embedding e = embed(sys, points, transforms, res);
    previous_cells.clear();
    for (double ep : eps) {
      CountCell cell;
      cell.R = R;
      cell.eps = ep;
      cell.M = greedy_separated(e, ep).size();
      cell.Ncover = opts.cover ? greedy_cover(e, ep).size() : 0;
      previous_cells.push_back(cell);
      table.cells.push_back(cell);
    }
    previous = transforms;
  }
  return table;
}

std::string counts_csv(const std::vector<CountsTable>& tables) {
  std::ostringstream out;
  out.precision(10);
  out << "system,rep,R,eps,M,Ncover,seed\n";
  for (const auto& t : tables) {
    for (const auto& c : t.cells) {
      out << '"' << t.system << "\",\"" << t.rep << "\"," << c.R << ',' << c.eps << ',' << c.M
          << ',' << c.Ncover << ',' << t.seed << '\n';
    }
  }
  return out.str();
}

EntropyEstimate entropy_estimate(const std::vector<double>& R_grid, const std::vector<double>& eps,
                                 const std::vector<std::vector<double>>& counts,
                                 std::size_t samples) {
  const std::size_t nr = R_grid.size();
  if (nr < 4) throw InvalidArgument("entropy_estimate: need at least 4 grid points");
  if (counts.size() != nr) throw InvalidArgument("entropy_estimate: counts rows must match R_grid");
  for (const auto& row : counts) {
    if (row.size() != eps.size()) throw InvalidArgument("entropy_estimate: counts columns must match eps");
    for (double c : row) {
      if (!(c >= 1.0)) throw InvalidArgument("entropy_estimate: counts must be at least 1");
    }
  }
  for (std::size_t i = 1; i < nr; ++i) {
    if (!(R_grid[i] > R_grid[i - 1])) throw InvalidArgument("entropy_estimate: grid must increase");
  }
  EntropyEstimate est;
  est.R_grid = R_grid;
  est.eps = eps;
  est.samples = samples;
  est.saturated.resize(nr * eps.size());
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t e = 0; e < eps.size(); ++e) {
      est.saturated[r * eps.size() + e] = samples > 0 && 2.0 * counts[r][e] >= static_cast<double>(samples);
    }
  }
  bool any = false;
  est.raw_summary = -INFINITY;
  for (std::size_t e = 0; e < eps.size(); ++e) {
    std::vector<double> x, y;
    for (std::size_t r = nr / 2; r < nr; ++r) {
      if (est.saturated[r * eps.size() + e]) continue;
      x.push_back(R_grid[r]);
      y.push_back(std::log(counts[r][e]));
    }
    if (x.size() < 2) {
      est.slope.push_back(NAN);
      est.residual.push_back(NAN);
      est.fitted.push_back(0);
      continue;
    }
    const LineFit fit = fit_line(x, y);
    est.slope.push_back(fit.slope);
    est.residual.push_back(fit.rms_residual);
    est.fitted.push_back(x.size());
    est.raw_summary = std::max(est.raw_summary, fit.slope);
    any = true;
  }
  est.complete = any;
  if (!any) est.raw_summary = 0.0;
  est.summary = std::max(0.0, est.raw_summary);
  double run = 0.0;
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t e = 0; e < eps.size() && r > 0; ++e) {
      if (est.saturated[r * eps.size() + e]) continue;
      const double v = (std::log(counts[r][e]) - std::log(counts[0][e])) / (R_grid[r] - R_grid[0]);
      run = std::max(run, v);
    }
    est.running.push_back(run);
  }
  return est;
}

EntropyEstimate entropy_estimate(const CountsTable& table) {
  std::vector<std::vector<double>> counts(table.R_grid.size(), std::vector<double>(table.eps.size()));
  for (std::size_t r = 0; r < table.R_grid.size(); ++r) {
    for (std::size_t e = 0; e < table.eps.size(); ++e) counts[r][e] = static_cast<double>(table.at(r, e).M);
  }
  EntropyEstimate est = entropy_estimate(table.R_grid, table.eps, counts, table.samples);
  est.seed = table.seed;
  return est;
}

// ---- suspension entropy --------------------------------------------------

std::vector<double> default_eps_sweep(const TransversalSystem& sys) {
  if (sys.kind == SystemKind::FullShift) return {0.5, 0.25, 0.125, 0.0625, 0.03125};
  return {0.2, 0.1, 0.05};
}

SuspensionReport suspension_entropy(const TransversalSystem& sys, const Representation& rep,
                                    const SurfaceGroup& group, const GroupBall& ball,
                                    double Kprime, const SuspensionOptions& opts) {
  if (opts.R_grid.empty()) throw InvalidArgument("suspension_entropy: empty R grid");
  if (opts.R_grid.back() > ball.R + 1e-12) {
    throw InvalidArgument("suspension_entropy: ball radius below the R grid");
  }
  const auto eps = opts.eps.empty() ? default_eps_sweep(sys) : opts.eps;
  std::vector<Point> points;
  if (sys.kind == SystemKind::FullShift) {
    points = exhaustive_shift_points(sys, opts.exhaustive_half_width, opts.seed);
  } else {
    points = sample_points(sys, opts.samples, opts.seed);
  }
  SuspensionReport rep_out;
  rep_out.Kprime = Kprime;
  rep_out.c1 = group.min_weight;
  rep_out.c2 = group.R0;
  const CountOptions copts{0, opts.cover};

  rep_out.gamma = count_table(sys, points, gamma_family(sys, rep, ball), opts.R_grid, eps, copts);
  rep_out.weighted =
      count_table(sys, points, weighted_family(sys, rep, group_weights(group)), opts.R_grid, eps, copts);
  // Word-length family on the matching grid N = R / c2.
  std::vector<double> N_grid;
  for (double R : opts.R_grid) N_grid.push_back(R / rep_out.c2);
  rep_out.glw = count_table(sys, points, weighted_family(sys, rep, unit_weights(group), "glw"),
                            N_grid, eps, copts);
  for (CountsTable* t : {&rep_out.gamma, &rep_out.weighted, &rep_out.glw}) {
    t->rep = rep.text;
    t->seed = opts.seed;
  }
  rep_out.est_gamma = entropy_estimate(rep_out.gamma);
  rep_out.est_weighted = entropy_estimate(rep_out.weighted);
  rep_out.est_glw = entropy_estimate(rep_out.glw);
  rep_out.h_T0 = rep_out.est_gamma.summary;
  rep_out.h_F = 2.0 + rep_out.h_T0;
  rep_out.h_omega = rep_out.est_weighted.summary;
  rep_out.h_glw = rep_out.est_glw.summary;
  rep_out.complete = rep_out.est_gamma.complete && rep_out.est_weighted.complete && rep_out.est_glw.complete;
  const double tol = opts.tolerance;
  rep_out.sandwich_ok = rep_out.h_omega <= rep_out.h_T0 + tol &&
                        rep_out.h_T0 <= Kprime * rep_out.h_omega + tol;
  rep_out.bracket_ok = rep_out.h_glw / rep_out.c2 <= rep_out.h_omega + tol &&
                       rep_out.h_omega <= rep_out.h_glw / rep_out.c1 + tol;
  return rep_out;
}

}  // namespace hypent
