#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "hypent/ballenum.hpp"
#include "hypent/entropy.hpp"
#include "hypent/fuchsian.hpp"
#include "hypent/zcase.hpp"

namespace hypent {

using Json = nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& bytes);

// Build parameters, polygon, generator coefficients, weights, relator and
// diagnostics.
Json group_document(const SurfaceGroup& group);
// Rebuilds from the stored parameters and checks the stored coefficients.
SurfaceGroup group_from_document(const Json& doc);
// Hash of the build parameters and exact generator coefficients.
std::uint64_t group_hash(const SurfaceGroup& group);

Json ball_document(const SurfaceGroup& group, const GroupBall& ball);
// Throws InvalidArgument when the document belongs to another group.
GroupBall ball_from_document(const SurfaceGroup& group, const Json& doc);

std::string ball_cache_path(const std::string& dir, const SurfaceGroup& group, double R,
                            double slack);
// Cached ball if present and matching, else enumerates and stores it.
GroupBall cached_ball(const std::string& dir, const SurfaceGroup& group, double R,
                      const EnumerationOptions& opts = {});

Json estimate_document(const EntropyEstimate& est);
Json k0_document(const K0Estimate& est);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace hypent
