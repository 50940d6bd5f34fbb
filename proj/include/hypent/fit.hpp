#pragma once

#include <vector>

namespace hypent {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  std::size_t points = 0;
};

// Ordinary least squares y = slope * x + intercept. Needs two distinct x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Fit over the upper half of the samples (index >= n / 2), at least 2 points.
LineFit fit_top_half(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hypent
