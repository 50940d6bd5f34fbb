#include "hypent/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypent/error.hpp"
#include "hypent/kernels.hpp"
#include "hypent/rng.hpp"

namespace hypent {

double reduction_radius(const SurfaceGroup& group) { return 2.0 * group.polygon.diameter + 1.0; }

ReductionTable build_reduction_table(const SurfaceGroup& group, const GroupBall& ball) {
  ReductionTable t;
  t.delta0 = group.polygon.diameter;
  t.circumradius = group.polygon.circumradius;
  t.radius = reduction_radius(group);
  if (ball.R < t.radius) throw InvalidArgument("reduction table needs a ball of radius 2 delta_0 + 1");
  const std::size_t n = ball.count_within(t.radius);
  t.betas.assign(ball.elements.begin(), ball.elements.begin() + static_cast<std::ptrdiff_t>(n));
  if (t.betas.empty() || !t.betas.front().word.empty()) {
    throw ReductionFailure("reduction table lacks the identity");
  }
  t.min_translation = INFINITY;
  for (const auto& b : t.betas) {
    t.inverses.push_back(invert(b.isometry));
    const Complex o = b.isometry.image_of_origin().z();
    t.ox.push_back(o.real());
    t.oy.push_back(o.imag());
    t.ow.push_back((1.0 - std::abs(o)) * (1.0 + std::abs(o)));
    t.K = std::max(t.K, b.word.size());
    if (!b.word.empty()) {
      const double tr = std::abs(b.isometry.a.real());
      if (tr > 1.0) t.min_translation = std::min(t.min_translation, 2.0 * std::acosh(tr));
    }
    const double err = coefficient_distance(word_product(group, b.word), b.isometry);
    if (err > 1e-8) throw ReductionFailure("ball word does not reproduce its isometry");
  }
  if (std::isfinite(t.min_translation) &&
      static_cast<double>(t.K) > 4.0 * t.radius / t.min_translation) {
    throw ReductionFailure("word length exceeds the systole bound; dedup is suspect");
  }
  t.c2 = group.R0;
  t.Kprime = t.c2 * static_cast<double>(t.K);

  // Any tile meeting the closed (delta_0 + 1)-disk has its center within
  // delta_0 + 1 + circumradius, so this bound covers every base case.
  const double base_reach = t.delta0 + 1.0 + t.circumradius + 1e-9;
  for (const auto& b : t.betas) {
    if (b.displacement <= base_reach) t.N0 = std::max(t.N0, b.word.size());
  }
  // Diagnostic: a 10^3-point polar net of the base disk.
  constexpr int kRings = 20, kSpokes = 50;
  for (int i = 0; i <= kRings; ++i) {
    const double r = (t.delta0 + 1.0) * i / kRings;
    for (int j = 0; j < (i == 0 ? 1 : kSpokes); ++j) {
      const DiskPoint p = DiskPoint::polar(r, 2.0 * std::numbers::pi * j / kSpokes);
      t.N0_net = std::max(t.N0_net, t.betas[base_tile(group, t, p)].word.size());
    }
  }
  return t;
}

ReductionTable build_reduction_table(const SurfaceGroup& group, const EnumerationOptions& opts) {
  return build_reduction_table(group, enumerate_ball(group, reduction_radius(group), opts));
}

ReductionStep reduce_step(const ReductionTable& table, DiskPoint xi) {
  const double d = poincare_distance(DiskPoint{}, xi);
  if (!(d > table.delta0 + 1.0)) {
    throw InvalidArgument("reduce_step: point already within delta_0 + 1 of the origin");
  }
  const double limit = std::cosh(d - 1.0) - 1.0;
  const double r = xi.abs();
  const std::size_t k = kernels::active().first_within(
      table.ox.data(), table.oy.data(), table.ow.data(), table.betas.size(), xi.x(), xi.y(),
      (1.0 - r) * (1.0 + r), limit);
  if (k == table.betas.size()) {
    throw ReductionFailure("no element of B brings the point one unit closer");
  }
  return {k, table.inverses[k].apply(xi)};
}

std::size_t base_tile(const SurfaceGroup& group, const ReductionTable& table, DiskPoint xi) {
  const double reach = poincare_distance(DiskPoint{}, xi) + table.circumradius + 1e-9;
  for (std::size_t k = 0; k < table.betas.size(); ++k) {
    if (table.betas[k].displacement > reach) break;
    if (contains(group.polygon, table.inverses[k].apply(xi))) return k;
  }
  throw ReductionFailure("point is not covered by the tiles of B");
}

Location locate(const SurfaceGroup& group, const ReductionTable& table, DiskPoint xi) {
  Location loc;
  DiskPoint cur = xi;
  const double base = table.delta0 + 1.0;
  while (poincare_distance(DiskPoint{}, cur) > base) {
    const ReductionStep step = reduce_step(table, cur);
    const auto& w = table.betas[step.beta].word;
    loc.word.insert(loc.word.end(), w.begin(), w.end());
    cur = step.next;
    ++loc.steps;
  }
  const std::size_t k = base_tile(group, table, cur);
  const auto& w = table.betas[k].word;
  loc.word.insert(loc.word.end(), w.begin(), w.end());
  loc.zeta = table.inverses[k].apply(cur);
  loc.word = free_reduce(loc.word);
  return loc;
}

std::size_t location_word_bound(const ReductionTable& table, DiskPoint xi) {
  const double excess = poincare_distance(DiskPoint{}, xi) - (table.delta0 + 1.0);
  const double steps = excess > 0.0 ? std::ceil(excess) : 0.0;
  return table.K * static_cast<std::size_t>(steps) + table.N0;
}

DiskPoint sample_hyperbolic_disk(double r, std::uint64_t seed, std::uint64_t index) {
  if (!(r >= 0.0)) throw InvalidArgument("sample_hyperbolic_disk: radius must be nonnegative");
  const CounterRng rng(seed, 0x1c1);
  // Area inside radius d is proportional to cosh d - 1.
  const double u = rng.uniform(2 * index);
  const double d = std::acosh(1.0 + u * (std::cosh(r) - 1.0));
  return DiskPoint::polar(std::min(d, r), 2.0 * std::numbers::pi * rng.uniform(2 * index + 1));
}

InclusionReport verify_inclusions(const SurfaceGroup& group, const ReductionTable& table,
                                  double delta, const std::vector<std::size_t>& N_values,
                                  std::size_t samples, std::size_t word_depth, std::uint64_t seed) {
  if (!(delta > 0.0)) throw InvalidArgument("verify_inclusions: delta must be positive");
  InclusionReport rep;
  rep.delta = delta;
  const double rate = 1.0 / static_cast<double>(table.K) - delta;
  for (std::size_t N : N_values) {
    InclusionLevel lvl;
    lvl.N = N;
    lvl.radius = std::max(0.0, rate * static_cast<double>(N));
    lvl.samples = samples;
    for (std::size_t i = 0; i < samples; ++i) {
      const DiskPoint xi = sample_hyperbolic_disk(lvl.radius, seed + N, i);
      const Location loc = locate(group, table, xi);
      lvl.max_length = std::max(lvl.max_length, loc.word.size());
      if (loc.word.size() > N) ++lvl.violations;
    }
    rep.left_violations += lvl.violations;
    rep.levels.push_back(lvl);
  }
  rep.word_depth = word_depth;
  const auto tiles = enumerate_word_ball(group, word_depth);
  rep.tiles = tiles.size();
  rep.weighted_worst_margin = INFINITY;
  for (const auto& e : tiles) {
    double weight = 0.0;
    for (int g : e.word) weight += group.weight(g);
    const double bound = weight + table.delta0 + 1e-9;
    double far = 0.0;
    for (const auto& v : group.polygon.vertices) {
      far = std::max(far, poincare_distance(DiskPoint{}, e.isometry.apply(v)));
    }
    rep.weighted_worst_margin = std::min(rep.weighted_worst_margin, bound - far);
    if (far > bound) ++rep.weighted_violations;
    const double len = static_cast<double>(e.word.size());
    if (len > 0 && far > len * (group.R0 + delta)) ++rep.outer_violations;
  }
  return rep;
}

LocatedWeightReport located_weight_check(const SurfaceGroup& group, const ReductionTable& table,
                                         const GroupBall& ball, std::size_t count) {
  LocatedWeightReport rep;
  if (ball.elements.empty()) return rep;
  const std::size_t stride = std::max<std::size_t>(1, ball.elements.size() / std::max<std::size_t>(count, 1));
  for (std::size_t i = 0; i < ball.elements.size() && rep.checked < count; i += stride) {
    const auto& e = ball.elements[i];
    const DiskPoint xi = e.isometry.image_of_origin();
    const Location loc = locate(group, table, xi);
    ++rep.checked;
    if (coefficient_distance(word_product(group, loc.word), e.isometry) > 1e-6) ++rep.mismatches;
    double weight = 0.0;
    for (int g : loc.word) weight += group.weight(g);
    const double bound = table.c2 * static_cast<double>(location_word_bound(table, xi));
    if (weight > bound + 1e-9) ++rep.violations;
  }
  return rep;
}

}  // namespace hypent
