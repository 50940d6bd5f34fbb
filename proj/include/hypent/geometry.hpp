#pragma once

#include <complex>
#include <vector>

namespace hypent {

using Complex = std::complex<double>;

// Points closer than this to the unit circle are rejected.
inline constexpr double kBoundaryGuard = 1e-12;

class DiskPoint {
 public:
  constexpr DiskPoint() = default;
  explicit DiskPoint(Complex z);
  DiskPoint(double x, double y) : DiskPoint(Complex{x, y}) {}

  // Point at hyperbolic distance `radius` from 0 in direction `angle`.
  static DiskPoint polar(double radius, double angle);

  Complex z() const noexcept { return z_; }
  double x() const noexcept { return z_.real(); }
  double y() const noexcept { return z_.imag(); }
  double abs() const noexcept { return std::abs(z_); }

  friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

 private:
  Complex z_{};
};

// z -> (a z + b) / (conj(b) z + conj(a)) with |a|^2 - |b|^2 = 1.
//
// Instances built through the factories are normalized and in canonical
// sign (Re a > 0, or Re a = 0 and Im a >= 0) so that equal maps have equal
// coefficients.
struct Isometry {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};

  static Isometry identity() { return {}; }
  static Isometry rotation(double theta);
  static Isometry translation_to(DiskPoint p);
  // Normalizes the determinant and fixes the sign.
  static Isometry from_coefficients(Complex a, Complex b);

  DiskPoint apply(DiskPoint p) const;
  Complex apply_raw(Complex z) const;
  DiskPoint image_of_origin() const;

  double determinant() const { return std::norm(a) - std::norm(b); }
  Isometry canonical() const;

  friend bool operator==(const Isometry&, const Isometry&) = default;
};

Isometry compose(const Isometry& outer, const Isometry& inner);
Isometry invert(const Isometry& m);

// Largest coefficient difference after canonicalization.
double coefficient_distance(const Isometry& m1, const Isometry& m2);
bool approx_equal(const Isometry& m1, const Isometry& m2, double tol);

double poincare_distance(DiskPoint p, DiskPoint q);
// d_P(0, m(0)), computed from |b| directly.
double displacement(const Isometry& m);
// Euclidean radius of the hyperbolic circle of radius R about 0.
double euclidean_radius(double hyperbolic_radius);
double hyperbolic_radius(double euclidean_radius);

// Unique orientation-preserving isometry with p1 -> q1 and p2 -> q2.
// Requires d(p1, p2) = d(q1, q2).
Isometry isometry_matching(DiskPoint p1, DiskPoint p2, DiskPoint q1, DiskPoint q2);

DiskPoint geodesic_midpoint(DiskPoint p, DiskPoint q);
// Point at hyperbolic distance `s` from p along the geodesic towards q.
DiskPoint geodesic_point(DiskPoint p, DiskPoint q, double s);

double rotation_displacement(DiskPoint xi, double theta);

struct OrbitSampling {
  int boundary_samples = 512;
  int rings = 8;
  // Golden-section refinement around the best boundary sample.
  bool refine = true;
};

// Lower approximation of sup_{|xi| <= R} d_P(m1 xi, m2 xi).
double sup_orbit_distance(const Isometry& m1, const Isometry& m2, double R,
                          const OrbitSampling& sampling = {});
double sup_orbit_distance(const Isometry& m1, const Isometry& m2, double R, int samples);

// Empirical constant A(eps) for the proximity of disk automorphisms: for the
// translations tau_a, tau_b, d(a, b) <= A^-1 e^-R keeps them eps-close on the
// closed R-disk and d(a, b) >= A e^-R pushes them at least eps apart.
struct AutomorphismCalibration {
  double eps = 0.0;
  double inner = 0.0;  // smallest A with the closeness regime on the grid
  double outer = 0.0;  // smallest A with the separation regime on the grid
  double A = 0.0;      // max(inner, outer, 1)
};

struct CalibrationGrid {
  std::vector<double> radii{2.0, 3.0, 4.0, 5.0};
  std::vector<double> base_radii{0.0, 0.7, 1.5};
  int directions = 6;
  int rotation_offsets = 5;
  OrbitSampling sampling{256, 4, true};
};

AutomorphismCalibration calibrate_automorphism_constant(double eps,
                                                         const CalibrationGrid& grid = {});

}  // namespace hypent
