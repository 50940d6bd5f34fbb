#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hypent/ballenum.hpp"
#include "hypent/kernels.hpp"
#include "hypent/transversal.hpp"

namespace hypent {

inline constexpr std::size_t kDefaultTransformBudget = 1'000'000;

// ---- transformation sets -------------------------------------------------

// Distinct transformations of words with total weight <= R (Dijkstra over
// the abelian image). weights[g] is the weight of generator g.
std::vector<Transform> reachable_transformations(const TransversalSystem& sys,
                                                 const Representation& rep,
                                                 const std::vector<double>& weights, double R,
                                                 std::size_t budget = kDefaultTransformBudget);

// Distinct rho(alpha) over ball elements with displacement <= R.
std::vector<Transform> gamma_transformations(const TransversalSystem& sys,
                                             const Representation& rep, const GroupBall& ball,
                                             double R);

// Powers f^i of the primary map, i in [0, n] or [-n, n].
std::vector<Transform> power_transformations(const TransversalSystem& sys, std::int64_t n,
                                             bool two_sided);

std::vector<double> group_weights(const SurfaceGroup& group);
std::vector<double> unit_weights(const SurfaceGroup& group);

// A Bowen-distance family: scale -> transformation set.
struct BowenFamily {
  std::string name;
  std::function<std::vector<Transform>(double)> at;
};

BowenFamily weighted_family(const TransversalSystem& sys, const Representation& rep,
                            std::vector<double> weights, std::string name = "weighted");
BowenFamily gamma_family(const TransversalSystem& sys, const Representation& rep,
                         const GroupBall& ball);
BowenFamily power_family(const TransversalSystem& sys, bool two_sided);

// max over T of d(T t, T s), evaluated directly on the points.
double bowen_distance(const TransversalSystem& sys, const std::vector<Transform>& transforms,
                      const Point& t, const Point& s);
double bowen_distance_weighted(const TransversalSystem& sys, const Representation& rep,
                               const std::vector<double>& weights, double R, const Point& t,
                               const Point& s);
double bowen_distance_gamma(const TransversalSystem& sys, const Representation& rep,
                            const GroupBall& ball, const Point& t, const Point& s);

// ---- embeddings for batched distance evaluation ---------------------------

// Each point mapped to the concatenated images under a transformation set,
// so that the Bowen distance becomes a flat kernel call. For shifts the
// symbols over the union of shifted windows are stored once with a per-
// position cost (distance from the position to the nearest shift); Bowen
// distances finer than 2^-resolution are reported as 0.
struct Embedding {
  bool symbolic = false;
  std::size_t count = 0;
  std::size_t dim = 0;
  std::vector<double> coords;
  std::vector<std::uint8_t> symbols;
  std::vector<std::uint8_t> cost;

  double distance(std::size_t i, std::size_t j) const;
  double distance(std::size_t i, std::size_t j, const kernels::KernelTable& kern) const;
};

Embedding embed(const TransversalSystem& sys, const std::vector<Point>& points,
                const std::vector<Transform>& transforms, int resolution);

// ---- greedy nets ---------------------------------------------------------

using DistanceFn = std::function<double(std::size_t, std::size_t)>;

// Maximal eps-separated subset in index order: pairwise d >= eps.
std::vector<std::size_t> greedy_separated(std::size_t n, const DistanceFn& dist, double eps);
// Subset whose open eps-balls cover all points; never larger than the
// separated set at the same eps.
std::vector<std::size_t> greedy_cover(std::size_t n, const DistanceFn& dist, double eps);

// Embedding versions. Symbolic embeddings are ultrametric, so d < eps is an
// equivalence and both nets reduce to the first member of each class.
std::vector<std::size_t> greedy_separated(const Embedding& e, double eps);
std::vector<std::size_t> greedy_cover(const Embedding& e, double eps);
// Pairwise scan regardless of structure; reference route for the above.
std::vector<std::size_t> greedy_separated_scan(const Embedding& e, double eps,
                                               const kernels::KernelTable& kern);

bool is_separated(std::size_t n, const std::vector<std::size_t>& set, const DistanceFn& dist,
                  double eps);
bool is_cover(std::size_t n, const std::vector<std::size_t>& set, const DistanceFn& dist,
              double eps);

// ---- count tables and slope fits -----------------------------------------

struct CountCell {
  double R = 0.0;
  double eps = 0.0;
  std::size_t M = 0;       // greedy separated count
  std::size_t Ncover = 0;  // greedy cover count
};

struct CountsTable {
  std::string system;
  std::string rep;
  std::string family;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<double> R_grid;
  std::vector<double> eps;
  std::vector<CountCell> cells;  // R-major

  const CountCell& at(std::size_t ri, std::size_t ei) const { return cells[ri * eps.size() + ei]; }
};

struct CountOptions {
  int resolution = 0;  // shift embedding resolution, 0 = derived from eps
  bool cover = true;
};

CountsTable count_table(const TransversalSystem& sys, const std::vector<Point>& points,
                        const BowenFamily& family, const std::vector<double>& R_grid,
                        const std::vector<double>& eps, const CountOptions& opts = {});

std::string counts_csv(const std::vector<CountsTable>& tables);

struct EntropyEstimate {
  std::vector<double> R_grid;
  std::vector<double> eps;
  std::vector<double> slope;        // per eps; NaN when too few unsaturated points
  std::vector<double> residual;     // rms residual per eps
  std::vector<std::size_t> fitted;  // points used per eps
  std::vector<bool> saturated;      // per cell, R-major
  double summary = 0.0;             // max fitted slope, clamped at 0
  double raw_summary = 0.0;         // before clamping
  std::vector<double> running;      // per R, nondecreasing finite-R estimate
  bool complete = false;            // at least one eps has a fitted slope
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

// Least squares of log count vs R on the top half of the grid, per eps,
// dropping cells where the count reaches half the sample size.
EntropyEstimate entropy_estimate(const std::vector<double>& R_grid, const std::vector<double>& eps,
                                 const std::vector<std::vector<double>>& counts,
                                 std::size_t samples = 0);
EntropyEstimate entropy_estimate(const CountsTable& table);

// ---- suspension entropy --------------------------------------------------

struct SuspensionOptions {
  std::vector<double> R_grid;
  std::vector<double> eps;
  std::size_t samples = 4000;  // continuous systems
  int exhaustive_half_width = 7;  // shifts: all patterns on [-w, w]
  std::uint64_t seed = 1;
  double tolerance = 0.05;
  bool cover = true;
};

struct SuspensionReport {
  CountsTable gamma, weighted, glw;
  EntropyEstimate est_gamma, est_weighted, est_glw;
  double h_T0 = 0.0;     // from the Gamma_R family
  double h_F = 0.0;      // 2 + h_T0
  double h_omega = 0.0;  // weighted family
  double h_glw = 0.0;    // unit-weight family, per word length
  double Kprime = 0.0;
  double c1 = 0.0, c2 = 0.0;
  bool complete = false;     // every family has a fitted slope
  bool sandwich_ok = false;  // h_omega <= h_T0 <= K' h_omega
  bool bracket_ok = false;   // h_glw / c2 <= h_omega <= h_glw / c1
};

SuspensionReport suspension_entropy(const TransversalSystem& sys, const Representation& rep,
                                    const SurfaceGroup& group, const GroupBall& ball,
                                    double Kprime, const SuspensionOptions& opts);

std::vector<double> default_eps_sweep(const TransversalSystem& sys);

}  // namespace hypent
