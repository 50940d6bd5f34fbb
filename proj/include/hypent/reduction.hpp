#pragma once

#include <cstdint>
#include <vector>

#include "hypent/ballenum.hpp"

namespace hypent {

// The finite set B = {beta : d(0, beta 0) <= 2 delta_0 + 1} with words, used
// to walk a point back towards the fundamental polygon one unit at a time.
struct ReductionTable {
  double radius = 0.0;  // 2 delta_0 + 1
  double delta0 = 0.0;
  double circumradius = 0.0;
  std::vector<GroupElement> betas;  // ball order; betas[0] is the identity
  std::vector<Isometry> inverses;
  std::size_t K = 0;     // max word length over B
  double c2 = 0.0;       // R_0
  double Kprime = 0.0;   // c2 * K
  std::size_t N0 = 0;    // certified base-ball word bound
  std::size_t N0_net = 0;  // max over a located net of the base ball (diagnostic)
  double min_translation = 0.0;

  // Orbit points beta(0) as structure of arrays for the batch kernel.
  std::vector<double> ox, oy, ow;
};

double reduction_radius(const SurfaceGroup& group);

ReductionTable build_reduction_table(const SurfaceGroup& group, const GroupBall& ball);
// Enumerates the ball at reduction_radius(group) and builds the table.
ReductionTable build_reduction_table(const SurfaceGroup& group,
                                     const EnumerationOptions& opts = {});

struct ReductionStep {
  std::size_t beta = 0;  // index into table.betas
  DiskPoint next;
};

ReductionStep reduce_step(const ReductionTable& table, DiskPoint xi);

struct Location {
  std::vector<int> word;  // xi = word_product(word)(zeta)
  DiskPoint zeta;
  std::size_t steps = 0;  // reduce_step applications
};

Location locate(const SurfaceGroup& group, const ReductionTable& table, DiskPoint xi);

// K * ceil(d(0, xi) - (delta_0 + 1))_+ + N0.
std::size_t location_word_bound(const ReductionTable& table, DiskPoint xi);

// Lowest-index tile of B whose translate of D holds xi, for d(0, xi) <= delta_0 + 1.
std::size_t base_tile(const SurfaceGroup& group, const ReductionTable& table, DiskPoint xi);

// Uniform sample of the closed hyperbolic disk of radius r (area measure).
DiskPoint sample_hyperbolic_disk(double r, std::uint64_t seed, std::uint64_t index);

struct InclusionLevel {
  std::size_t N = 0;
  double radius = 0.0;  // (1/K - delta) N, clamped at 0
  std::size_t samples = 0;
  std::size_t violations = 0;  // located word longer than N
  std::size_t max_length = 0;
};

struct InclusionReport {
  double delta = 0.0;
  std::vector<InclusionLevel> levels;
  std::size_t left_violations = 0;
  // Tiles of all words of length <= word_depth: vertices within
  // sum(omega) + delta_0.
  std::size_t word_depth = 0;
  std::size_t tiles = 0;
  std::size_t weighted_violations = 0;
  double weighted_worst_margin = 0.0;  // min of bound - vertex distance
  // sup over tiles of (max vertex distance) / length versus R_0 + delta;
  // only expected to hold for large lengths.
  std::size_t outer_violations = 0;
  bool ok() const { return left_violations == 0 && weighted_violations == 0; }
};

InclusionReport verify_inclusions(const SurfaceGroup& group, const ReductionTable& table,
                                  double delta, const std::vector<std::size_t>& N_values,
                                  std::size_t samples, std::size_t word_depth, std::uint64_t seed);

struct LocatedWeightReport {
  std::size_t checked = 0;
  std::size_t mismatches = 0;  // located word does not reproduce the element
  std::size_t violations = 0;  // sum(omega) over the word above c2 * word bound
};

// For ball elements alpha, the word located for alpha(0) must equal alpha
// and carry weight at most c2 (K ceil(d - delta_0 - 1)_+ + N0).
LocatedWeightReport located_weight_check(const SurfaceGroup& group, const ReductionTable& table,
                                         const GroupBall& ball, std::size_t count);

}  // namespace hypent
