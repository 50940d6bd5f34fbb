#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypent/ballenum.hpp"
#include "hypent/entropy.hpp"
#include "hypent/reduction.hpp"
#include "hypent/transversal.hpp"

namespace hypent {

// Integer exponent per generator index (inverse = negated), from a Z-case
// representation.
std::vector<std::int64_t> generator_exponents(const Representation& rep);

// max |exponent sum| over ball elements with displacement <= R.
std::int64_t n_of_R(const GroupBall& ball, const std::vector<std::int64_t>& exponents, double R);

struct K0Estimate {
  std::vector<double> R_grid;
  std::vector<std::int64_t> n;
  // sup of n(R')/R' over all 0 < R' <= R (not just grid points); n is a
  // step function, so the sup is attained at element displacements.
  std::vector<double> running_sup;
  double generator_bound = 0.0;  // max |n(alpha)| / omega(alpha)
  std::size_t superadditivity_violations = 0;
  std::size_t monotonicity_violations = 0;
  // n(R) >= floor(R / omega(alpha)) |n(alpha)| for every generator.
  std::size_t k1_lower_violations = 0;
  // n(R) <= max|n(alpha)| * (K ceil(R - delta_0 - 1)_+ + N0), the word bound
  // from the reduction walk.
  std::size_t k1_upper_violations = 0;
  double certified = 0.0;  // running_sup at the last grid point
  double stability = 0.0;  // relative change of the sup over the last two grid points
  bool stable = false;     // stability <= 10%
};

K0Estimate k0_estimate(const SurfaceGroup& group, const GroupBall& ball,
                       const std::vector<std::int64_t>& exponents,
                       const std::vector<double>& R_grid, const ReductionTable* table = nullptr);

double casz_formula(double K0, double htop);

using BigInt = boost::multiprecision::cpp_int;

// k^(n+2m+1) one-sided, k^(2(n+m)+1) two-sided.
BigInt shift_bowen_count_exact(int k, std::int64_t n, std::int64_t m, bool two_sided);

struct TwoSidedCheck {
  std::size_t two_sided = 0;  // N_{f+-1}(n, eps) on the centers
  std::size_t one_sided = 0;  // N_f(2n, eps) on f^-n of the centers
  bool equal = false;
};

// Both greedy counts on the same centers in the same order; exact systems
// must agree exactly.
TwoSidedCheck two_sided_identity_check(const TransversalSystem& sys, std::int64_t n, double eps,
                                       const std::vector<Point>& centers);

struct BrinKatokValue {
  double neg_log_measure = 0.0;  // -log nu(B_n^{f+-1}(t, 2^-m))
  double per_n = 0.0;            // divided by n, tends to 2 h_nu
  double corrected = 0.0;        // divided by 2(n+m)+1, tends to h_nu
};

BrinKatokValue brin_katok_two_sided(const std::vector<double>& p, const ShiftPoint& t,
                                    std::int64_t n, std::int64_t m);

double bernoulli_entropy(const std::vector<double>& p);
double reference_htop(const TransversalSystem& sys);

struct NonInvariance {
  double omega1 = 0.0;   // weight of the first generator of the regular group
  double Kprime = 0.0;   // K' of the regular group
  double eps_limit = 0.0;  // omega1 / Kprime
  double omega2 = 0.0;   // distinguished weight of the degenerate group
  double htop = 0.0;
  double upper = 0.0;  // 2 + 2 h K' / omega1
  double lower = 0.0;  // 2 + 2 h / omega2
  bool ok = false;     // upper < lower
};

NonInvariance noninvariance_bounds(const SurfaceGroup& regular, double Kprime,
                                   const SurfaceGroup& degenerate, double htop);

}  // namespace hypent
