#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace hypent {

enum class SystemKind { FullShift, CircleRotation, CatMap, FinitePermutation };

// Compact metric system with commuting invertible maps. Every built-in map
// set is abelian, so a transformation is an exponent vector over `maps`.
struct TransversalSystem {
  SystemKind kind = SystemKind::FullShift;
  int k = 2;           // FullShift alphabet size
  int W = 64;          // FullShift window half-width
  double alpha = 0.0;  // CircleRotation angle, in turns
  int n = 5;           // FinitePermutation size

  // Map names; maps[0] is the primary map f used in the Z-case.
  std::vector<std::string> maps() const;
  // Order of a map (0 when infinite).
  int map_order(std::size_t i) const;
  std::string spec() const;
  bool exact() const { return kind != SystemKind::CircleRotation; }
};

// "shift:k=2,W=64", "rotation:alpha=0.381966", "catmap", "perm:n=5".
TransversalSystem make_system(const std::string& spec);

// Symbols over [-W, W] in the original frame. The point represented is
// x_i = symbols[i + offset + W]; it is only known for i in [lo(), hi()].
struct ShiftPoint {
  int W = 0;
  int offset = 0;
  std::vector<std::uint8_t> symbols;

  int lo() const;
  int hi() const;
  std::uint8_t at(int i) const;  // throws WindowExhausted outside [lo, hi]
  friend bool operator==(const ShiftPoint&, const ShiftPoint&) = default;
};

struct CirclePoint {
  double x = 0.0;  // in [0, 1)
  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
};

struct TorusPoint {
  double x = 0.0, y = 0.0;  // in [0, 1)^2
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

struct PermPoint {
  int v = 0;
  friend bool operator==(const PermPoint&, const PermPoint&) = default;
};

using Point = std::variant<ShiftPoint, CirclePoint, TorusPoint, PermPoint>;

using Transform = std::vector<std::int64_t>;

Transform identity_transform(const TransversalSystem& sys);
// Reduces finite-order components into [0, order).
Transform normalize(const TransversalSystem& sys, Transform t);
Transform add(const TransversalSystem& sys, const Transform& x, const Transform& y);
Transform negate(const TransversalSystem& sys, const Transform& x);

Point apply(const TransversalSystem& sys, const Transform& t, const Point& p);
// Single map, exponent e.
Point apply_map(const TransversalSystem& sys, std::size_t map, std::int64_t e, const Point& p);
double distance(const TransversalSystem& sys, const Point& p, const Point& q);

// Generator label assignment for a surface group of the given genus; index
// g follows the generator numbering of SurfaceGroup (inverse = g ^ 1).
struct Representation {
  int genus = 0;
  std::vector<Transform> transforms;
  std::string text;
  // Z-case: every transform is a power of maps[0].
  bool zcase = false;
  std::vector<std::int64_t> exponents;  // filled when zcase

  const Transform& of(int g) const { return transforms[g]; }
};

// "a1=1" (power of the primary map), "a1=shift^2,b1=flip", "" (identity).
Representation parse_representation(const TransversalSystem& sys, int genus,
                                    const std::string& text);
Representation identity_representation(const TransversalSystem& sys, int genus);

Transform word_transform(const TransversalSystem& sys, const Representation& rep,
                         const std::vector<int>& word);

// Composition in word order; the last letter acts first. Shift windows are
// consumed letter by letter, so exhaustion is reported mid-word.
Point apply_word(const TransversalSystem& sys, const Representation& rep,
                 const std::vector<int>& word, const Point& p);

// count random points. For FullShift every symbol is i.i.d. uniform.
std::vector<Point> sample_points(const TransversalSystem& sys, std::size_t count,
                                 std::uint64_t seed);
// All k^(2w+1) patterns on [-w, w], remaining symbols from the seed; the
// pattern of point j is the base-k expansion of j read from position -w.
std::vector<Point> exhaustive_shift_points(const TransversalSystem& sys, int w,
                                           std::uint64_t seed);
// Same, with the pattern on [first, last].
std::vector<Point> exhaustive_shift_points(const TransversalSystem& sys, int first, int last,
                                           std::uint64_t seed);

// Dyadic points (40 fractional bits) on which CatMap arithmetic is exact.
TorusPoint dyadic_torus_point(std::uint64_t bits_x, std::uint64_t bits_y);

double circle_distance(double x, double y);

}  // namespace hypent
