#include "hypent/zcase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypent/error.hpp"

namespace hypent {

std::vector<std::int64_t> generator_exponents(const Representation& rep) {
  if (!rep.zcase) throw InvalidArgument("generator_exponents: representation is not a Z-case");
  return rep.exponents;
}

namespace {

std::int64_t exponent_sum(const std::vector<int>& word, const std::vector<std::int64_t>& exps) {
  std::int64_t s = 0;
  for (int g : word) s += exps.at(static_cast<std::size_t>(g));
  return s;
}

}  // namespace

std::int64_t n_of_R(const GroupBall& ball, const std::vector<std::int64_t>& exponents, double R) {
  if (R > ball.R + 1e-12) throw InvalidArgument("n_of_R: R beyond the ball radius");
  std::int64_t best = 0;
  for (const auto& e : ball.elements) {
    if (e.displacement > R) break;
    best = std::max(best, std::abs(exponent_sum(e.word, exponents)));
  }
  return best;
}

K0Estimate k0_estimate(const SurfaceGroup& group, const GroupBall& ball,
                       const std::vector<std::int64_t>& exponents,
                       const std::vector<double>& R_grid, const ReductionTable* table) {
  if (exponents.size() != group.generators.size()) {
    throw InvalidArgument("k0_estimate: one exponent per generator required");
  }
  std::int64_t nmax = 0;
  for (auto x : exponents) nmax = std::max(nmax, std::abs(x));
  if (nmax == 0) throw InvalidArgument("k0_estimate: all exponents vanish, K0 is degenerate");
  if (R_grid.empty()) throw InvalidArgument("k0_estimate: empty grid");
  for (std::size_t i = 1; i < R_grid.size(); ++i) {
    if (!(R_grid[i] > R_grid[i - 1])) throw InvalidArgument("k0_estimate: grid must increase");
  }
  if (R_grid.back() > ball.R + 1e-12) throw InvalidArgument("k0_estimate: grid beyond ball radius");

  K0Estimate est;
  est.R_grid = R_grid;
  for (std::size_t g = 0; g < exponents.size(); ++g) {
    est.generator_bound = std::max(est.generator_bound,
                                   std::abs(static_cast<double>(exponents[g])) / group.weight(static_cast<int>(g)));
  }

  // One sweep over the ball in displacement order gives n(R) on the grid
  // and the continuous sup of n(R')/R'.
  std::int64_t run_n = 0;
  double sup = 0.0;
  std::size_t gi = 0;
  auto flush = [&](double upto) {
    while (gi < R_grid.size() && R_grid[gi] < upto) {
      est.n.push_back(run_n);
      est.running_sup.push_back(sup);
      ++gi;
    }
  };
  for (const auto& e : ball.elements) {
    flush(e.displacement);
    if (gi == R_grid.size()) break;
    const std::int64_t v = std::abs(exponent_sum(e.word, exponents));
    if (v > run_n) run_n = v;
    if (e.displacement > 0.0) sup = std::max(sup, static_cast<double>(run_n) / e.displacement);
  }
  flush(INFINITY);

  const double tol = 1e-9;
  for (std::size_t i = 0; i < R_grid.size(); ++i) {
    if (i > 0 && est.n[i] < est.n[i - 1]) ++est.monotonicity_violations;
    for (std::size_t j = i; j < R_grid.size(); ++j) {
      const double target = R_grid[i] + R_grid[j];
      for (std::size_t k = j; k < R_grid.size(); ++k) {
        if (std::abs(R_grid[k] - target) <= tol) {
          if (est.n[k] < est.n[i] + est.n[j]) ++est.superadditivity_violations;
        }
      }
    }
    for (std::size_t g = 0; g < exponents.size(); ++g) {
      const auto fl = static_cast<std::int64_t>(std::floor(R_grid[i] / group.weight(static_cast<int>(g)) + 1e-12));
      if (est.n[i] < fl * std::abs(exponents[g])) ++est.k1_lower_violations;
    }
    if (table) {
      const double over = std::max(0.0, std::ceil(R_grid[i] - (table->delta0 + 1.0) - 1e-12));
      const double bound = static_cast<double>(nmax) *
                           (static_cast<double>(table->K) * over + static_cast<double>(table->N0));
      if (static_cast<double>(est.n[i]) > bound) ++est.k1_upper_violations;
    }
  }
  est.certified = est.running_sup.back();
  if (R_grid.size() >= 2) {
    const double prev = est.running_sup[R_grid.size() - 2];
    est.stability = est.certified > 0.0 ? (est.certified - prev) / est.certified : 1.0;
    est.stable = est.stability <= 0.10;
  }
  return est;
}

double casz_formula(double K0, double htop) {
  if (!std::isfinite(K0) || !std::isfinite(htop)) throw InvalidArgument("casz_formula: non-finite input");
  return 2.0 + 2.0 * K0 * htop;
}

BigInt shift_bowen_count_exact(int k, std::int64_t n, std::int64_t m, bool two_sided) {
  if (k < 2) throw InvalidArgument("shift_bowen_count_exact: k must be at least 2");
  if (n < 0 || m < 0) throw InvalidArgument("shift_bowen_count_exact: n, m must be nonnegative");
  const std::int64_t coords = two_sided ? 2 * (n + m) + 1 : n + 2 * m + 1;
  BigInt out = 1;
  for (std::int64_t i = 0; i < coords; ++i) out *= k;
  return out;
}

TwoSidedCheck two_sided_identity_check(const TransversalSystem& sys, std::int64_t n, double eps,
                                       const std::vector<Point>& centers) {
  if (n < 0) throw InvalidArgument("two_sided_identity_check: n must be nonnegative");
  if (centers.empty()) throw InvalidArgument("two_sided_identity_check: no centers");
  const int res = static_cast<int>(std::ceil(-std::log2(eps) - 1e-12));
  TwoSidedCheck out;
  {
    const Embedding e = embed(sys, centers, power_transformations(sys, n, true), std::max(res, 0));
    out.two_sided = greedy_separated(e, eps).size();
  }
  std::vector<Point> pulled;
  pulled.reserve(centers.size());
  for (const auto& c : centers) pulled.push_back(apply_map(sys, 0, -n, c));
  {
    const Embedding e = embed(sys, pulled, power_transformations(sys, 2 * n, false), std::max(res, 0));
    out.one_sided = greedy_separated(e, eps).size();
  }
  out.equal = out.two_sided == out.one_sided;
  return out;
}

BrinKatokValue brin_katok_two_sided(const std::vector<double>& p, const ShiftPoint& t,
                                    std::int64_t n, std::int64_t m) {
  if (n < 1 || m < 0) throw InvalidArgument("brin_katok_two_sided: need n >= 1, m >= 0");
  double total = 0.0;
  for (double q : p) {
    if (!(q >= 0.0)) throw InvalidArgument("brin_katok_two_sided: negative probability");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("brin_katok_two_sided: probabilities must sum to 1");
  const std::int64_t reach = n + m;
  if (reach > t.W) throw WindowExhausted("brin_katok_two_sided: window below n + m");
  // Symbol counts first: the log measure is then one product per symbol,
  // exact for uniform weights up to the final rounding.
  std::vector<std::int64_t> count(p.size(), 0);
  for (std::int64_t i = -reach; i <= reach; ++i) {
    const std::uint8_t sym = t.at(static_cast<int>(i));
    if (sym >= p.size()) throw InvalidArgument("brin_katok_two_sided: symbol outside alphabet");
    if (p[sym] == 0.0) throw NumericError("brin_katok_two_sided: zero-probability symbol in window");
    ++count[sym];
  }
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (count[k]) s -= static_cast<double>(count[k]) * std::log(p[k]);
  }
  BrinKatokValue v;
  v.neg_log_measure = s;
  v.per_n = s / static_cast<double>(n);
  v.corrected = s / static_cast<double>(2 * reach + 1);
  return v;
}

double bernoulli_entropy(const std::vector<double>& p) {
  if (p.empty()) throw InvalidArgument("bernoulli_entropy: empty distribution");
  double total = 0.0, h = 0.0;
  for (double q : p) {
    if (!(q >= 0.0)) throw InvalidArgument("bernoulli_entropy: negative probability");
    total += q;
    if (q > 0.0) h -= q * std::log(q);
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("bernoulli_entropy: probabilities must sum to 1");
  return h;
}

double reference_htop(const TransversalSystem& sys) {
  switch (sys.kind) {
    case SystemKind::FullShift: return std::log(static_cast<double>(sys.k));
    case SystemKind::CircleRotation: return 0.0;
    case SystemKind::CatMap: return std::log((3.0 + std::sqrt(5.0)) / 2.0);
    case SystemKind::FinitePermutation: return 0.0;
  }
  throw InvalidArgument("reference_htop: unknown system");
}

NonInvariance noninvariance_bounds(const SurfaceGroup& regular, double Kprime,
                                   const SurfaceGroup& degenerate, double htop) {
  if (!(Kprime > 0.0)) throw InvalidArgument("noninvariance_bounds: K' must be positive");
  NonInvariance r;
  r.omega1 = regular.weight(0);
  r.Kprime = Kprime;
  r.eps_limit = r.omega1 / Kprime;
  r.omega2 = degenerate.weight(degenerate.distinguished);
  r.htop = htop;
  r.upper = 2.0 + 2.0 * htop * Kprime / r.omega1;
  r.lower = 2.0 + 2.0 * htop / r.omega2;
  r.ok = r.upper < r.lower;
  return r;
}

}  // namespace hypent
