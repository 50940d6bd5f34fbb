#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypent/error.hpp"
#include "hypent/geometry.hpp"

namespace hypent {

namespace {

// Smallest delta in [lo, hi] with S(delta) >= eps, by bisection in log scale.
// S is assumed nondecreasing in delta.
template <class F>
double threshold_delta(F&& S, double eps, double lo, double hi) {
  if (S(lo) >= eps) return lo;
  if (S(hi) < eps) return hi;
  double llo = std::log(lo);
  double lhi = std::log(hi);
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (llo + lhi);
    if (S(std::exp(mid)) >= eps) {
      lhi = mid;
    } else {
      llo = mid;
    }
  }
  return std::exp(0.5 * (llo + lhi));
}

}  // namespace

AutomorphismCalibration calibrate_automorphism_constant(double eps, const CalibrationGrid& grid) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("calibration: eps must lie in (0, 1)");
  AutomorphismCalibration out;
  out.eps = eps;
  for (double R : grid.radii) {
    const double scale = std::exp(-R);
    for (double base : grid.base_radii) {
      for (int d = 0; d < grid.directions; ++d) {
        const double psi = 2.0 * std::numbers::pi * d / grid.directions;
        const DiskPoint a = DiskPoint::polar(base, 0.3);
        const Isometry ta = Isometry::translation_to(a);
        auto partner = [&](double delta) {
          return ta.apply(DiskPoint::polar(delta, psi));
        };
        // Closeness: translations only.
        auto s_trans = [&](double delta) {
          return sup_orbit_distance(ta, Isometry::translation_to(partner(delta)), R,
                                    grid.sampling);
        };
        const double d_in = threshold_delta(s_trans, eps, 1e-14, 10.0);
        out.inner = std::max(out.inner, scale / d_in);
        // Separation: every automorphism with tau(0) = b, probed by small
        // rotation offsets about the pure translation.
        for (int k = 0; k < grid.rotation_offsets; ++k) {
          const double theta =
              grid.rotation_offsets == 1
                  ? 0.0
                  : scale * (2.0 * k / (grid.rotation_offsets - 1) - 1.0);
          auto s_rot = [&](double delta) {
            const Isometry tb = compose(Isometry::translation_to(partner(delta)),
                                        Isometry::rotation(theta));
            return sup_orbit_distance(ta, tb, R, grid.sampling);
          };
          const double d_out = threshold_delta(s_rot, eps, 1e-14, 10.0);
          out.outer = std::max(out.outer, d_out / scale);
        }
      }
    }
  }
  out.A = std::max({out.inner, out.outer, 1.0});
  return out;
}

}  // namespace hypent
