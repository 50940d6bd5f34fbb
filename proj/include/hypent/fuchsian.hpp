#pragma once

#include <string>
#include <vector>

#include "hypent/geometry.hpp"

namespace hypent {

// Membership tolerance on the signed side distance (sinh of it, exactly).
inline constexpr double kSideTolerance = 1e-10;

// Convex geodesic polygon with vertices listed counterclockwise.
struct GeodesicPolygon {
  std::vector<DiskPoint> vertices;
  std::vector<double> angles;  // interior angle at each vertex
  double angle_sum = 0.0;
  double diameter = 0.0;       // delta_0, max pairwise vertex distance
  double circumradius = 0.0;   // max distance from 0 to a vertex

  std::size_t size() const { return vertices.size(); }
  DiskPoint vertex(std::size_t i) const { return vertices[i % vertices.size()]; }
};

GeodesicPolygon make_polygon(std::vector<DiskPoint> vertices);
double interior_angle(DiskPoint prev, DiskPoint v, DiskPoint next);
double polygon_angle_sum(const std::vector<DiskPoint>& vertices);

// sinh of the signed distance from xi to the geodesic through p and q,
// positive on the left of p -> q.
double side_value(DiskPoint p, DiskPoint q, DiskPoint xi);
// Minimum side_value over the polygon's sides.
double inner_margin(const GeodesicPolygon& D, DiskPoint xi);
bool contains(const GeodesicPolygon& D, DiskPoint xi, double tol = kSideTolerance);

// Generator g has index 2 * letter + inverse, letters ordered a1, b1, a2, b2, ...
inline constexpr int inverse_generator(int g) { return g ^ 1; }

struct Generator {
  std::string label;  // "a1", "b1", ...; inverses upper-case: "A1", "B1"
  Isometry map;
  int side_from = 0;  // side s_j = [V_j, V_{j+1}]
  int side_to = 0;
  double weight = 0.0;
};

struct SurfaceGroup {
  int genus = 0;
  std::string mode;      // "regular" or "degenerate"
  double eps = 0.0;      // requested bound on the distinguished weight
  double nu = 0.0;       // big central angle (equal to mu when regular)
  double mu = 0.0;
  int schedule_step = 0;  // j with nu = pi - 2^-j; 0 when regular
  GeodesicPolygon polygon;
  std::vector<Generator> generators;
  std::vector<int> relator;
  double R0 = 0.0;          // max weight
  double min_weight = 0.0;  // min weight
  int distinguished = 0;    // a1, mapping (A_{4g-1} A_{4g}) onto (A_1 A_2)

  int rank() const { return static_cast<int>(generators.size()); }
  double weight(int g) const { return generators[g].weight; }
  const Isometry& map(int g) const { return generators[g].map; }
  double relator_residual() const;
};

// Vertices of the 4g-gon with central angle steps nu, mu, ..., mu, nu, mu
// scaled to the radius at which the angle sum is 2 pi.
std::vector<DiskPoint> polygon_vertices(int genus, double nu);
SurfaceGroup build_from_angle(int genus, double nu);

SurfaceGroup build_regular(int genus);
SurfaceGroup build_degenerate(int genus, double eps);

Isometry word_product(const SurfaceGroup& group, const std::vector<int>& word);
std::string generator_label(int genus, int g);
int parse_generator(const std::string& label, int genus);
std::string word_to_string(const SurfaceGroup& group, const std::vector<int>& word);
std::vector<int> free_reduce(const std::vector<int>& word);

struct GroupDiagnostics {
  double angle_sum_error = 0.0;
  double relator_residual = 0.0;
  double side_match_error = 0.0;  // worst endpoint mismatch of a side pairing
  double inverse_weight_error = 0.0;
  double min_weight = 0.0;
  bool convex = true;
  bool ok() const;
};

GroupDiagnostics diagnose(const SurfaceGroup& group);

}  // namespace hypent
