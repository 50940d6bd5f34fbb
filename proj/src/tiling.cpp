#include "hypent/tiling.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hypent/ballenum.hpp"

namespace hypent {

namespace {

const char* const kPalette[] = {"#f4d35e", "#82c0cc", "#ee964b", "#9bc53d", "#c3a6e0",
                                "#f95738", "#5bc0eb", "#e8c1a0"};

struct Canvas {
  double half;
  double scale;
  std::string x(double v) const { return fmt(half + scale * v); }
  std::string y(double v) const { return fmt(half - scale * v); }
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
  }
};

// Path segment from p to q along the geodesic: the circle through p, q and
// the inversion of p, or a straight line when p, q, 0 are collinear.
std::string geodesic_segment(const Canvas& c, Complex p, Complex q) {
  const double cross = p.real() * q.imag() - p.imag() * q.real();
  if (std::abs(cross) < 1e-12 || std::norm(p) < 1e-24) {
    return "L " + c.x(q.real()) + ' ' + c.y(q.imag());
  }
  const Complex pinv = p / std::norm(p);
  // Circumcenter of p, q, pinv.
  const double ax = p.real(), ay = p.imag(), bx = q.real(), by = q.imag();
  const double cx = pinv.real(), cy = pinv.imag();
  const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  const Complex center{(a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d,
                       (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d};
  const double r = std::abs(p - center);
  const Complex u = p - center, v = q - center;
  const double turn = u.real() * v.imag() - u.imag() * v.real();
  // Counterclockwise in the disk is sweep 0 once y is flipped for the screen.
  const int sweep = turn > 0.0 ? 0 : 1;
  const std::string rs = Canvas::fmt(c.scale * r);
  return "A " + rs + ' ' + rs + " 0 0 " + std::to_string(sweep) + ' ' + c.x(q.real()) + ' ' +
         c.y(q.imag());
}

}  // namespace

Tiling render_tiling(const SurfaceGroup& group, std::size_t depth, const TilingStyle& style) {
  const auto elements = enumerate_word_ball(group, depth);
  const Canvas c{style.size / 2.0, style.size / 2.0 - 10.0};
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.size << "\" height=\""
    << style.size << "\" viewBox=\"0 0 " << style.size << ' ' << style.size << "\">\n";
  s << "<circle cx=\"" << c.x(0) << "\" cy=\"" << c.y(0) << "\" r=\"" << Canvas::fmt(c.scale)
    << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  // Deepest tiles first so the fundamental polygon ends up on top.
  for (std::size_t k = elements.size(); k-- > 0;) {
    const auto& e = elements[k];
    const auto& vs = group.polygon.vertices;
    std::ostringstream d;
    Complex first = e.isometry.apply_raw(vs[0].z());
    d << "M " << c.x(first.real()) << ' ' << c.y(first.imag());
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const Complex p = e.isometry.apply_raw(vs[i].z());
      const Complex q = e.isometry.apply_raw(vs[(i + 1) % vs.size()].z());
      d << ' ' << geodesic_segment(c, p, q);
    }
    d << " Z";
    const char* fill = e.word.empty() ? "#d62828" : kPalette[(e.word.size() - 1) % 8];
    s << "<path d=\"" << d.str() << "\" fill=\"" << fill
      << "\" fill-opacity=\"0.55\" stroke=\"#222\" stroke-width=\"0.6\" data-length=\""
      << e.word.size() << "\"/>\n";
  }
  if (style.label_vertices) {
    for (std::size_t i = 0; i < group.polygon.vertices.size(); ++i) {
      const auto& v = group.polygon.vertices[i];
      s << "<text x=\"" << c.x(v.x()) << "\" y=\"" << c.y(v.y())
        << "\" font-size=\"10\">V" << i << "</text>\n";
    }
  }
  s << "<circle cx=\"" << c.x(0) << "\" cy=\"" << c.y(0) << "\" r=\"3\" fill=\"black\"/>\n";
  if (style.mark_origin_image) {
    const DiskPoint o = group.map(group.distinguished).image_of_origin();
    s << "<circle cx=\"" << c.x(o.x()) << "\" cy=\"" << c.y(o.y())
      << "\" r=\"4\" fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\" class=\"origin-image\"/>\n";
  }
  s << "</svg>\n";
  return {s.str(), elements.size()};
}

}  // namespace hypent
