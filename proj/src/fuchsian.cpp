#include "hypent/fuchsian.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "hypent/error.hpp"

namespace hypent {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kBisectionSteps = 200;

}  // namespace

double interior_angle(DiskPoint prev, DiskPoint v, DiskPoint next) {
  // Translating v to 0 is conformal at v, so the angle is read off directly.
  const Isometry t = invert(Isometry::translation_to(v));
  const Complex u = t.apply_raw(next.z());
  const Complex w = t.apply_raw(prev.z());
  return std::abs(std::arg(w / u));
}

double polygon_angle_sum(const std::vector<DiskPoint>& vertices) {
  const std::size_t n = vertices.size();
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sum += interior_angle(vertices[(j + n - 1) % n], vertices[j], vertices[(j + 1) % n]);
  }
  return sum;
}

GeodesicPolygon make_polygon(std::vector<DiskPoint> vertices) {
  if (vertices.size() < 3) throw InvalidArgument("polygon needs at least 3 vertices");
  GeodesicPolygon poly;
  poly.vertices = std::move(vertices);
  const std::size_t n = poly.size();
  poly.angles.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    poly.angles[j] = interior_angle(poly.vertex(j + n - 1), poly.vertex(j), poly.vertex(j + 1));
    poly.angle_sum += poly.angles[j];
    poly.circumradius = std::max(poly.circumradius, poincare_distance(DiskPoint{}, poly.vertex(j)));
    for (std::size_t k = j + 1; k < n; ++k) {
      poly.diameter = std::max(poly.diameter, poincare_distance(poly.vertex(j), poly.vertex(k)));
    }
  }
  return poly;
}

double side_value(DiskPoint p, DiskPoint q, DiskPoint xi) {
  const Isometry t = invert(Isometry::translation_to(p));
  const Complex u = t.apply_raw(q.z());
  const Complex w = t.apply_raw(xi.z());
  const double r = std::abs(w);
  return 2.0 * (w * std::conj(u / std::abs(u))).imag() / ((1.0 - r) * (1.0 + r));
}

double inner_margin(const GeodesicPolygon& D, DiskPoint xi) {
  double margin = INFINITY;
  for (std::size_t j = 0; j < D.size(); ++j) {
    margin = std::min(margin, side_value(D.vertex(j), D.vertex(j + 1), xi));
  }
  return margin;
}

bool contains(const GeodesicPolygon& D, DiskPoint xi, double tol) {
  for (std::size_t j = 0; j < D.size(); ++j) {
    if (side_value(D.vertex(j), D.vertex(j + 1), xi) < -tol) return false;
  }
  return true;
}

std::vector<DiskPoint> polygon_vertices(int genus, double nu) {
  const int n = 4 * genus;
  const double mu = (2.0 * kPi - 2.0 * nu) / (n - 2);
  std::vector<double> theta;
  theta.reserve(n);
  theta.push_back(0.5 * mu);
  theta.push_back(0.5 * mu + nu);
  for (int j = 2; j < n - 1; ++j) theta.push_back(theta.back() + mu);
  theta.push_back(theta.back() + nu);

  auto at_radius = [&](double r) {
    std::vector<DiskPoint> v;
    v.reserve(n);
    for (double t : theta) v.emplace_back(std::polar(r, t));
    return v;
  };
  // The angle sum decreases from the Euclidean (n - 2) pi towards 0 as r -> 1.
  double lo = 0.0;
  double hi = 1.0 - 2.0 * kBoundaryGuard;
  for (int it = 0; it < kBisectionSteps && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (polygon_angle_sum(at_radius(mid)) > 2.0 * kPi) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double r = 0.5 * (lo + hi);
  auto vertices = at_radius(r);
  const double err = std::abs(polygon_angle_sum(vertices) - 2.0 * kPi);
  if (!(err <= 1e-9)) {
    throw ConstructionFailure("angle-sum bisection did not converge", err);
  }
  return vertices;
}

SurfaceGroup build_from_angle(int genus, double nu) {
  if (genus < 2) throw InvalidArgument("genus must be at least 2");
  const int n = 4 * genus;
  if (!(nu > 0.0 && nu < kPi)) throw InvalidArgument("big angle must lie in (0, pi)");
  SurfaceGroup group;
  group.genus = genus;
  group.nu = nu;
  group.mu = (2.0 * kPi - 2.0 * nu) / (n - 2);
  group.polygon = make_polygon(polygon_vertices(genus, nu));
  const auto& poly = group.polygon;

  group.generators.resize(n);
  auto mod = [n](int x) { return ((x % n) + n) % n; };
  for (int k = 0; k < genus; ++k) {
    // a_k: s_{-4k-2} -> s_{-4k};  b_k: s_{-4k-1} -> s_{-4k-3}.
    const int sides[2][2] = {{mod(-4 * k - 2), mod(-4 * k)}, {mod(-4 * k - 1), mod(-4 * k - 3)}};
    for (int which = 0; which < 2; ++which) {
      const int letter = 2 * k + which;
      const int from = sides[which][0];
      const int to = sides[which][1];
      const Isometry m = isometry_matching(poly.vertex(from), poly.vertex(from + 1),
                                           poly.vertex(to + 1), poly.vertex(to));
      Generator& fwd = group.generators[2 * letter];
      fwd.map = m;
      fwd.side_from = from;
      fwd.side_to = to;
      Generator& back = group.generators[2 * letter + 1];
      back.map = invert(m);
      back.side_from = to;
      back.side_to = from;
    }
  }
  group.R0 = 0.0;
  group.min_weight = INFINITY;
  for (int g = 0; g < n; ++g) {
    group.generators[g].label = generator_label(genus, g);
    group.generators[g].weight = displacement(group.generators[g].map);
    group.R0 = std::max(group.R0, group.generators[g].weight);
    group.min_weight = std::min(group.min_weight, group.generators[g].weight);
  }
  for (int k = 0; k < genus; ++k) {
    const int a = 4 * k, b = 4 * k + 2;
    group.relator.insert(group.relator.end(), {a, b, inverse_generator(a), inverse_generator(b)});
  }
  group.distinguished = 0;
  return group;
}

SurfaceGroup build_regular(int genus) {
  SurfaceGroup group = build_from_angle(genus, 2.0 * kPi / (4 * genus));
  group.mode = "regular";
  return group;
}

SurfaceGroup build_degenerate(int genus, double eps) {
  if (genus < 2) throw InvalidArgument("genus must be at least 2");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  double best = INFINITY;
  for (int j = 1; j <= 40; ++j) {
    const double nu = kPi - std::ldexp(1.0, -j);
    SurfaceGroup group;
    try {
      group = build_from_angle(genus, nu);
    } catch (const Error&) {
      break;
    }
    if (!diagnose(group).ok()) break;
    const double w = group.weight(group.distinguished);
    best = std::min(best, w);
    if (w <= eps) {
      group.mode = "degenerate";
      group.eps = eps;
      group.schedule_step = j;
      return group;
    }
  }
  throw ConstructionFailure("degenerate schedule exhausted before reaching eps", best);
}

double SurfaceGroup::relator_residual() const {
  return coefficient_distance(word_product(*this, relator), Isometry::identity());
}

Isometry word_product(const SurfaceGroup& group, const std::vector<int>& word) {
  Isometry m;
  for (int g : word) m = compose(m, group.map(g));
  return m;
}

std::string generator_label(int genus, int g) {
  if (g < 0 || g >= 4 * genus) throw InvalidArgument("generator index out of range");
  const int letter = g / 2;
  std::string label(1, letter % 2 == 0 ? 'a' : 'b');
  if (g % 2 == 1) label[0] = static_cast<char>(std::toupper(label[0]));
  return label + std::to_string(letter / 2 + 1);
}

int parse_generator(const std::string& label, int genus) {
  if (label.size() < 2) throw InvalidArgument("bad generator label '" + label + "'");
  const char c = label[0];
  const int kind = (c == 'a' || c == 'A') ? 0 : (c == 'b' || c == 'B') ? 1 : -1;
  if (kind < 0) throw InvalidArgument("bad generator label '" + label + "'");
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(label.substr(1), &used);
    if (used != label.size() - 1) k = 0;
  } catch (const std::exception&) {
    k = 0;
  }
  if (k < 1 || k > genus) throw InvalidArgument("generator label '" + label + "' out of range");
  const int inv = std::isupper(static_cast<unsigned char>(c)) ? 1 : 0;
  return 2 * (2 * (k - 1) + kind) + inv;
}

std::string word_to_string(const SurfaceGroup& group, const std::vector<int>& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += group.generators[word[i]].label;
  }
  return out;
}

std::vector<int> free_reduce(const std::vector<int>& word) {
  std::vector<int> out;
  out.reserve(word.size());
  for (int g : word) {
    if (!out.empty() && out.back() == inverse_generator(g)) {
      out.pop_back();
    } else {
      out.push_back(g);
    }
  }
  return out;
}

bool GroupDiagnostics::ok() const {
  return angle_sum_error <= 1e-9 && relator_residual <= 1e-6 && side_match_error <= 1e-9 &&
         inverse_weight_error <= 1e-10 && min_weight >= 1e-3 && convex;
}

GroupDiagnostics diagnose(const SurfaceGroup& group) {
  GroupDiagnostics d;
  const auto& poly = group.polygon;
  d.angle_sum_error = std::abs(poly.angle_sum - 2.0 * kPi);
  d.relator_residual = group.relator_residual();
  d.min_weight = INFINITY;
  for (int g = 0; g < group.rank(); ++g) {
    const Generator& gen = group.generators[g];
    // Orientation reversed: start of the source side lands on the end of the target.
    const Complex s0 = gen.map.apply_raw(poly.vertex(gen.side_from).z());
    const Complex s1 = gen.map.apply_raw(poly.vertex(gen.side_from + 1).z());
    d.side_match_error = std::max({d.side_match_error, std::abs(s0 - poly.vertex(gen.side_to + 1).z()),
                                   std::abs(s1 - poly.vertex(gen.side_to).z())});
    d.inverse_weight_error = std::max(
        d.inverse_weight_error, std::abs(gen.weight - group.weight(inverse_generator(g))));
    d.min_weight = std::min(d.min_weight, gen.weight);
  }
  for (std::size_t j = 0; j < poly.size(); ++j) {
    if (!(poly.angles[j] < kPi)) d.convex = false;
    if (side_value(poly.vertex(j), poly.vertex(j + 1), DiskPoint{}) <= 0.0) d.convex = false;
  }
  return d;
}

}  // namespace hypent
