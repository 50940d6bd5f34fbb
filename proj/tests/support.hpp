#pragma once

// Shared generators and independent oracles for the unit tests.

#include <cmath>
#include <numbers>

#include "hypent/geometry.hpp"
#include "hypent/rng.hpp"

namespace testsupport {

using hypent::Complex;
using hypent::DiskPoint;
using hypent::Isometry;

// Point at hyperbolic distance at most rmax from 0, drawn by index.
inline DiskPoint random_point(const hypent::CounterRng& rng, std::uint64_t i, double rmax = 4.0) {
  const double d = rmax * rng.uniform(3 * i);
  return DiskPoint::polar(d, 2.0 * std::numbers::pi * rng.uniform(3 * i + 1));
}

inline Isometry random_isometry(const hypent::CounterRng& rng, std::uint64_t i, double rmax = 3.0) {
  const DiskPoint p = random_point(rng, 2 * i, rmax);
  const double theta = 2.0 * std::numbers::pi * rng.uniform(7 * i + 5);
  return hypent::compose(Isometry::translation_to(p), Isometry::rotation(theta));
}

// cosh d = 1 + 2 |p - q|^2 / ((1 - |p|^2)(1 - |q|^2)).
inline double cosh_distance_oracle(Complex p, Complex q) {
  const double num = 2.0 * std::norm(p - q);
  const double den = (1.0 - std::norm(p)) * (1.0 - std::norm(q));
  return std::acosh(1.0 + num / den);
}

// Mobius action from the raw matrix, independent of Isometry::apply.
inline Complex mobius(Complex a, Complex b, Complex z) {
  return (a * z + b) / (std::conj(b) * z + std::conj(a));
}

}  // namespace testsupport
