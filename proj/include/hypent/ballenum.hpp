#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hypent/fuchsian.hpp"

namespace hypent {

inline constexpr double kDedupQuantum = 1e-8;
inline constexpr std::size_t kDefaultBudget = 2'000'000;

using Fingerprint = std::array<std::int64_t, 4>;

// Quantized canonical coefficients (Re a, Im a, Re b, Im b).
Fingerprint fingerprint(const Isometry& m, double quantum = kDedupQuantum);

struct GroupElement {
  std::vector<int> word;
  Isometry isometry;
  double displacement = 0.0;
  Fingerprint fp{};
};

struct GroupBall {
  double R = 0.0;
  double slack = 0.0;
  double quantum = kDedupQuantum;
  std::vector<GroupElement> elements;  // sorted by (displacement, fingerprint)
  std::size_t explored = 0;            // elements visited within R + slack
  std::size_t duplicate_hits = 0;

  std::size_t size() const { return elements.size(); }
  // Index of the element matching m within the dedup tolerance.
  std::optional<std::size_t> find(const Isometry& m) const;
  std::vector<Fingerprint> fingerprints() const;
  std::size_t count_within(double radius) const;
  std::size_t max_word_length() const;
};

// Max distance from 0 to a point of the fundamental polygon plus a rounding
// margin; chains of adjacent tiles along [0, alpha(0)] never leave R + this.
double default_slack(const SurfaceGroup& group);

struct EnumerationOptions {
  std::optional<double> slack;  // default_slack(group) when empty
  std::size_t budget = kDefaultBudget;
};

GroupBall enumerate_ball(const SurfaceGroup& group, double R, const EnumerationOptions& opts = {});

// Distinct elements of word length <= max_length in BFS order, each with a
// shortest word.
std::vector<GroupElement> enumerate_word_ball(const SurfaceGroup& group, std::size_t max_length,
                                              std::size_t budget = kDefaultBudget);

struct GrowthProfile {
  std::vector<double> R;
  std::vector<std::size_t> counts;
  double slope = 0.0;  // least squares of log count vs R on the top half
};

GrowthProfile growth_profile(const SurfaceGroup& group, const std::vector<double>& R_grid,
                             const EnumerationOptions& opts = {});

// Dehn's algorithm for the one-relator presentation: free reduction plus
// replacement of any subword longer than half a cyclic relator conjugate.
std::vector<int> dehn_reduce(const std::vector<int>& word, const std::vector<int>& relator);

struct DehnReport {
  std::size_t pairs = 0;
  std::size_t violations = 0;  // distinct fingerprints whose quotient reduces to empty
};

// For every pair of elements with displacement <= radius, x^-1 y must not
// Dehn-reduce to the empty word.
DehnReport dehn_cross_check(const SurfaceGroup& group, const GroupBall& ball, double radius);

std::vector<int> invert_word(const std::vector<int>& word);

}  // namespace hypent
