#include "hypent/ballenum.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "hypent/error.hpp"
#include "hypent/fit.hpp"
#include "hypent/kernels.hpp"

namespace hypent {

namespace {

struct FingerprintHash {
  std::size_t operator()(const Fingerprint& f) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t v : f) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

// Distinct elements of a discrete group sit far apart in coefficient space
// (order 1 in the balls used here) while rounding drift along long words
// stays below 1e-8, so matching uses coarse cells and a loose tolerance.
constexpr double kMatchCell = 1e-3;
constexpr double kMatchTolerance = 1e-5;

Fingerprint cell_of(const Isometry& c) {
  return {static_cast<std::int64_t>(std::floor(c.a.real() / kMatchCell)),
          static_cast<std::int64_t>(std::floor(c.a.imag() / kMatchCell)),
          static_cast<std::int64_t>(std::floor(c.b.real() / kMatchCell)),
          static_cast<std::int64_t>(std::floor(c.b.imag() / kMatchCell))};
}

// Calls visit on every cell that may hold a match for m, including the
// sign-flipped form when Re a is too small to fix the sign reliably.
template <class F>
bool probe_cells(const Isometry& m, F&& visit) {
  auto probe_one = [&](const Isometry& c) {
    const double v[4] = {c.a.real(), c.a.imag(), c.b.real(), c.b.imag()};
    const Fingerprint base = cell_of(c);
    int alt[4];
    for (int k = 0; k < 4; ++k) {
      const double frac = v[k] / kMatchCell - static_cast<double>(base[k]);
      const double margin = kMatchTolerance / kMatchCell;
      alt[k] = frac < margin ? -1 : frac > 1.0 - margin ? 1 : 0;
    }
    for (int mask = 0; mask < 16; ++mask) {
      bool skip = false;
      Fingerprint key = base;
      for (int k = 0; k < 4 && !skip; ++k) {
        if (mask & (1 << k)) {
          if (alt[k] == 0) skip = true;
          key[k] += alt[k];
        }
      }
      if (!skip && visit(key)) return true;
    }
    return false;
  };
  const Isometry c = m.canonical();
  if (probe_one(c)) return true;
  if (std::abs(c.a.real()) < kMatchTolerance) return probe_one(Isometry{-c.a, -c.b});
  return false;
}

double displacement_of(double br, double bi) {
  const double delta = 2.0 * (br * br + bi * bi);
  return std::log1p(delta + std::sqrt(delta * (delta + 2.0)));
}

}  // namespace

Fingerprint fingerprint(const Isometry& m, double quantum) {
  const Isometry c = m.canonical();
  return {static_cast<std::int64_t>(std::floor(c.a.real() / quantum)),
          static_cast<std::int64_t>(std::floor(c.a.imag() / quantum)),
          static_cast<std::int64_t>(std::floor(c.b.real() / quantum)),
          static_cast<std::int64_t>(std::floor(c.b.imag() / quantum))};
}

std::optional<std::size_t> GroupBall::find(const Isometry& m) const {
  // Elements are sorted by displacement; search the displacement window first.
  const double d = displacement(m);
  auto lo = std::lower_bound(elements.begin(), elements.end(), d - 1e-6,
                             [](const GroupElement& e, double v) { return e.displacement < v; });
  for (auto it = lo; it != elements.end() && it->displacement <= d + 1e-6; ++it) {
    if (coefficient_distance(it->isometry, m) <= kMatchTolerance) {
      return static_cast<std::size_t>(it - elements.begin());
    }
  }
  return std::nullopt;
}

std::vector<Fingerprint> GroupBall::fingerprints() const {
  std::vector<Fingerprint> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(e.fp);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t GroupBall::count_within(double radius) const {
  return static_cast<std::size_t>(
      std::upper_bound(elements.begin(), elements.end(), radius,
                       [](double v, const GroupElement& e) { return v < e.displacement; }) -
      elements.begin());
}

std::size_t GroupBall::max_word_length() const {
  std::size_t k = 0;
  for (const auto& e : elements) k = std::max(k, e.word.size());
  return k;
}

double default_slack(const SurfaceGroup& group) { return group.polygon.circumradius + 1e-6; }

GroupBall enumerate_ball(const SurfaceGroup& group, double R, const EnumerationOptions& opts) {
  if (!(R >= 0.0)) throw InvalidArgument("enumerate_ball: R must be nonnegative");
  const double slack = opts.slack.value_or(default_slack(group));
  if (!(slack >= 0.0)) throw InvalidArgument("enumerate_ball: slack must be nonnegative");
  const double prune = R + slack;
  // displacement <= prune  <=>  2|b|^2 <= cosh(prune) - 1
  const double limit = std::cosh(prune) - 1.0;

  std::vector<double> ar{1.0}, ai{0.0}, br{0.0}, bi{0.0};
  std::vector<std::int32_t> parent{-1};
  std::vector<std::int8_t> via{-1};
  std::unordered_map<Fingerprint, std::uint32_t, FingerprintHash> seen;
  seen.emplace(cell_of(Isometry::identity()), 0);

  const auto& kern = kernels::active();
  std::vector<double> tar, tai, tbr, tbi;
  std::size_t duplicates = 0;
  std::size_t level_begin = 0;
  std::size_t level_end = 1;
  while (level_begin < level_end) {
    const std::size_t n = level_end - level_begin;
    tar.resize(n);
    tai.resize(n);
    tbr.resize(n);
    tbi.resize(n);
    for (int g = 0; g < group.rank(); ++g) {
      const Isometry& gm = group.map(g);
      kern.compose_right({ar.data() + level_begin, ai.data() + level_begin, br.data() + level_begin,
                          bi.data() + level_begin},
                         n, gm.a.real(), gm.a.imag(), gm.b.real(), gm.b.imag(),
                         {tar.data(), tai.data(), tbr.data(), tbi.data()});
      for (std::size_t i = 0; i < n; ++i) {
        if (2.0 * (tbr[i] * tbr[i] + tbi[i] * tbi[i]) > limit) continue;
        const Isometry y{Complex{tar[i], tai[i]}, Complex{tbr[i], tbi[i]}};
        const bool known = probe_cells(y, [&](const Fingerprint& key) {
          const auto it = seen.find(key);
          if (it == seen.end()) return false;
          const std::uint32_t j = it->second;
          const Isometry x{Complex{ar[j], ai[j]}, Complex{br[j], bi[j]}};
          return coefficient_distance(x, y) <= kMatchTolerance;
        });
        if (known) {
          ++duplicates;
          continue;
        }
        if (ar.size() >= opts.budget) {
          double dmin = displacement_of(tbr[i], tbi[i]);
          for (std::size_t j = level_begin; j < ar.size(); ++j) {
            dmin = std::min(dmin, displacement_of(br[j], bi[j]));
          }
          throw BudgetExceeded("ball enumeration exceeded the element budget of " +
                                   std::to_string(opts.budget),
                               std::max(0.0, std::min(R, dmin - slack)));
        }
        seen.emplace(cell_of(y.canonical()), static_cast<std::uint32_t>(ar.size()));
        ar.push_back(tar[i]);
        ai.push_back(tai[i]);
        br.push_back(tbr[i]);
        bi.push_back(tbi[i]);
        parent.push_back(static_cast<std::int32_t>(level_begin + i));
        via.push_back(static_cast<std::int8_t>(g));
      }
    }
    level_begin = level_end;
    level_end = ar.size();
  }

  GroupBall ball;
  ball.R = R;
  ball.slack = slack;
  ball.explored = ar.size();
  ball.duplicate_hits = duplicates;
  for (std::size_t j = 0; j < ar.size(); ++j) {
    const double d = displacement_of(br[j], bi[j]);
    if (d > R) continue;
    GroupElement e;
    e.isometry = Isometry{Complex{ar[j], ai[j]}, Complex{br[j], bi[j]}};
    e.displacement = d;
    e.fp = fingerprint(e.isometry);
    for (std::int32_t k = static_cast<std::int32_t>(j); parent[k] >= 0; k = parent[k]) {
      e.word.push_back(via[k]);
    }
    std::reverse(e.word.begin(), e.word.end());
    ball.elements.push_back(std::move(e));
  }
  std::sort(ball.elements.begin(), ball.elements.end(),
            [](const GroupElement& x, const GroupElement& y) {
              if (x.displacement != y.displacement) return x.displacement < y.displacement;
              return x.fp < y.fp;
            });
  return ball;
}

std::vector<GroupElement> enumerate_word_ball(const SurfaceGroup& group, std::size_t max_length,
                                              std::size_t budget) {
  std::vector<Isometry> maps{Isometry::identity()};
  std::vector<std::int32_t> parent{-1};
  std::vector<std::int8_t> via{-1};
  std::unordered_map<Fingerprint, std::uint32_t, FingerprintHash> seen;
  seen.emplace(cell_of(Isometry::identity()), 0);
  std::size_t level_begin = 0, level_end = 1;
  for (std::size_t len = 0; len < max_length && level_begin < level_end; ++len) {
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (int g = 0; g < group.rank(); ++g) {
        const Isometry y = compose(maps[i], group.map(g));
        const bool known = probe_cells(y, [&](const Fingerprint& key) {
          const auto it = seen.find(key);
          return it != seen.end() && coefficient_distance(maps[it->second], y) <= kMatchTolerance;
        });
        if (known) continue;
        if (maps.size() >= budget) {
          throw BudgetExceeded("word ball exceeded the element budget of " + std::to_string(budget),
                               static_cast<double>(len));
        }
        seen.emplace(cell_of(y.canonical()), static_cast<std::uint32_t>(maps.size()));
        maps.push_back(y);
        parent.push_back(static_cast<std::int32_t>(i));
        via.push_back(static_cast<std::int8_t>(g));
      }
    }
    level_begin = level_end;
    level_end = maps.size();
  }
  std::vector<GroupElement> out(maps.size());
  for (std::size_t j = 0; j < maps.size(); ++j) {
    GroupElement& e = out[j];
    e.isometry = maps[j];
    e.displacement = displacement(maps[j]);
    e.fp = fingerprint(maps[j]);
    for (std::int32_t k = static_cast<std::int32_t>(j); parent[k] >= 0; k = parent[k]) {
      e.word.push_back(via[k]);
    }
    std::reverse(e.word.begin(), e.word.end());
  }
  return out;
}

GrowthProfile growth_profile(const SurfaceGroup& group, const std::vector<double>& R_grid,
                             const EnumerationOptions& opts) {
  if (R_grid.empty()) throw InvalidArgument("growth_profile: empty grid");
  for (std::size_t i = 1; i < R_grid.size(); ++i) {
    if (!(R_grid[i] > R_grid[i - 1])) throw InvalidArgument("growth_profile: grid must increase");
  }
  const GroupBall ball = enumerate_ball(group, R_grid.back(), opts);
  GrowthProfile out;
  out.R = R_grid;
  std::vector<double> logs;
  for (double r : R_grid) {
    out.counts.push_back(ball.count_within(r));
    logs.push_back(std::log(static_cast<double>(out.counts.back())));
  }
  if (R_grid.size() >= 2) out.slope = fit_top_half(R_grid, logs).slope;
  return out;
}

std::vector<int> invert_word(const std::vector<int>& word) {
  std::vector<int> out(word.rbegin(), word.rend());
  for (int& g : out) g = inverse_generator(g);
  return out;
}

std::vector<int> dehn_reduce(const std::vector<int>& word, const std::vector<int>& relator) {
  const std::size_t len = relator.size();
  std::vector<std::vector<int>> cyclic;
  for (const auto& r : {relator, invert_word(relator)}) {
    for (std::size_t s = 0; s < len; ++s) {
      std::vector<int> rot(len);
      for (std::size_t i = 0; i < len; ++i) rot[i] = r[(s + i) % len];
      cyclic.push_back(std::move(rot));
    }
  }
  std::vector<int> w = free_reduce(word);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t L = len; L > len / 2 && !changed; --L) {
      for (const auto& rot : cyclic) {
        auto it = std::search(w.begin(), w.end(), rot.begin(), rot.begin() + L);
        if (it == w.end()) continue;
        // rot[0..L) * rot[L..len) = 1, so the prefix equals the inverse of the rest.
        const std::vector<int> rest(rot.begin() + L, rot.end());
        const std::vector<int> replacement = invert_word(rest);
        const auto pos = it - w.begin();
        w.erase(w.begin() + pos, w.begin() + pos + static_cast<std::ptrdiff_t>(L));
        w.insert(w.begin() + pos, replacement.begin(), replacement.end());
        w = free_reduce(w);
        changed = true;
        break;
      }
    }
  }
  return w;
}

DehnReport dehn_cross_check(const SurfaceGroup& group, const GroupBall& ball, double radius) {
  DehnReport report;
  const std::size_t n = ball.count_within(radius);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<int> inv = invert_word(ball.elements[i].word);
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<int> w = inv;
      w.insert(w.end(), ball.elements[j].word.begin(), ball.elements[j].word.end());
      ++report.pairs;
      if (dehn_reduce(w, group.relator).empty()) ++report.violations;
    }
  }
  return report;
}

}  // namespace hypent
