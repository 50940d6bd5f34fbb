#include "hypent/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypent/error.hpp"

namespace hypent {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex guarded(Complex z) {
  if (!(std::abs(z) <= 1.0 - kBoundaryGuard)) {
    throw NumericError("point left the disk guard band: |z| = " + std::to_string(std::abs(z)));
  }
  return z;
}

// 1 - |z|^2 without the cancellation of the naive form.
double one_minus_norm(Complex z) {
  const double r = std::abs(z);
  return (1.0 - r) * (1.0 + r);
}

}  // namespace

DiskPoint::DiskPoint(Complex z) : z_(guarded(z)) {}

DiskPoint DiskPoint::polar(double radius, double angle) {
  return DiskPoint(std::polar(euclidean_radius(radius), angle));
}

Isometry Isometry::rotation(double theta) {
  return Isometry{std::polar(1.0, 0.5 * theta), Complex{}}.canonical();
}

Isometry Isometry::translation_to(DiskPoint p) {
  const double s = std::sqrt(one_minus_norm(p.z()));
  return Isometry{Complex{1.0 / s, 0.0}, p.z() / s};
}

Isometry Isometry::from_coefficients(Complex a, Complex b) {
  const double det = std::norm(a) - std::norm(b);
  if (!(det > 0.0)) throw NumericError("isometry coefficients do not preserve the disk");
  const double s = std::sqrt(det);
  return Isometry{a / s, b / s}.canonical();
}

Isometry Isometry::canonical() const {
  if (a.real() < 0.0 || (a.real() == 0.0 && a.imag() < 0.0)) return Isometry{-a, -b};
  return *this;
}

Complex Isometry::apply_raw(Complex z) const {
  return (a * z + b) / (std::conj(b) * z + std::conj(a));
}

DiskPoint Isometry::apply(DiskPoint p) const { return DiskPoint(apply_raw(p.z())); }

DiskPoint Isometry::image_of_origin() const { return DiskPoint(b / std::conj(a)); }

Isometry compose(const Isometry& outer, const Isometry& inner) {
  const Complex a = outer.a * inner.a + outer.b * std::conj(inner.b);
  const Complex b = outer.a * inner.b + outer.b * std::conj(inner.a);
  return Isometry::from_coefficients(a, b);
}

Isometry invert(const Isometry& m) { return Isometry{std::conj(m.a), -m.b}.canonical(); }

double coefficient_distance(const Isometry& m1, const Isometry& m2) {
  const Isometry c1 = m1.canonical();
  const Isometry c2 = m2.canonical();
  return std::max(std::abs(c1.a - c2.a), std::abs(c1.b - c2.b));
}

bool approx_equal(const Isometry& m1, const Isometry& m2, double tol) {
  return coefficient_distance(m1, m2) <= tol;
}

double poincare_distance(DiskPoint p, DiskPoint q) {
  const double num = 2.0 * std::norm(p.z() - q.z());
  const double den = one_minus_norm(p.z()) * one_minus_norm(q.z());
  const double delta = num / den;
  // acosh(1 + delta)
  return std::log1p(delta + std::sqrt(delta * (delta + 2.0)));
}

double displacement(const Isometry& m) {
  const double delta = 2.0 * std::norm(m.b);
  return std::log1p(delta + std::sqrt(delta * (delta + 2.0)));
}

double euclidean_radius(double hyperbolic_radius) { return std::tanh(0.5 * hyperbolic_radius); }

double hyperbolic_radius(double euclidean_radius) { return 2.0 * std::atanh(euclidean_radius); }

Isometry isometry_matching(DiskPoint p1, DiskPoint p2, DiskPoint q1, DiskPoint q2) {
  const Isometry tp = Isometry::translation_to(p1);
  const Isometry tq = Isometry::translation_to(q1);
  const Complex u = invert(tp).apply_raw(p2.z());
  const Complex v = invert(tq).apply_raw(q2.z());
  const double phi = std::arg(v) - std::arg(u);
  return compose(tq, compose(Isometry::rotation(phi), invert(tp)));
}

DiskPoint geodesic_point(DiskPoint p, DiskPoint q, double s) {
  const Isometry tp = Isometry::translation_to(p);
  const Complex w = invert(tp).apply_raw(q.z());
  if (std::abs(w) == 0.0) return p;
  const Complex local = std::polar(euclidean_radius(s), std::arg(w));
  return DiskPoint(tp.apply_raw(local));
}

DiskPoint geodesic_midpoint(DiskPoint p, DiskPoint q) {
  return geodesic_point(p, q, 0.5 * poincare_distance(p, q));
}

double rotation_displacement(DiskPoint xi, double theta) {
  return poincare_distance(xi, DiskPoint(xi.z() * std::polar(1.0, theta)));
}

double sup_orbit_distance(const Isometry& m1, const Isometry& m2, double R,
                          const OrbitSampling& sampling) {
  if (!(R > 0.0)) throw InvalidArgument("sup_orbit_distance: R must be positive");
  if (sampling.boundary_samples < 1 || sampling.rings < 1) {
    throw InvalidArgument("sup_orbit_distance: sampling counts must be positive");
  }
  // d(m1 xi, m2 xi) = d(xi, h xi).
  const Isometry h = compose(invert(m1), m2);
  auto displaced = [&h](Complex z) {
    const DiskPoint p(z);
    return poincare_distance(p, h.apply(p));
  };

  double best = displaced(Complex{});
  double best_angle = 0.0;
  const int n = sampling.boundary_samples;
  for (int ring = 1; ring <= sampling.rings; ++ring) {
    const double r = euclidean_radius(R * ring / sampling.rings);
    for (int k = 0; k < n; ++k) {
      const double angle = kTwoPi * k / n;
      const double v = displaced(std::polar(r, angle));
      if (v > best) {
        best = v;
        if (ring == sampling.rings) best_angle = angle;
      }
    }
  }
  if (sampling.refine) {
    const double r = euclidean_radius(R);
    auto f = [&](double angle) { return displaced(std::polar(r, angle)); };
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = best_angle - kTwoPi / n;
    double hi = best_angle + kTwoPi / n;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + invphi * (hi - lo);
        f2 = f(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - invphi * (hi - lo);
        f1 = f(x1);
      }
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

double sup_orbit_distance(const Isometry& m1, const Isometry& m2, double R, int samples) {
  if (samples < 64) throw InvalidArgument("sup_orbit_distance: need at least 64 samples");
  return sup_orbit_distance(m1, m2, R, OrbitSampling{samples, 8, true});
}

}  // namespace hypent
