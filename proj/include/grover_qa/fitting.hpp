#pragma once

#include <span>
#include <utility>
#include <vector>

namespace grover_qa {

/// Least-squares line y = slope * x + intercept.
struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  std::vector<std::pair<double, double>> points;  // (x, y) as fitted
};

/// y = prefactor * x^exponent, fitted as a line in log-log space.
/// rms_residual is measured in log(y).
struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double rms_residual = 0.0;
};

/// Requires >= 3 points with distinct x.
ScalingFit fit_line(std::span<const double> x, std::span<const double> y);

/// Requires >= 3 points, all x and y strictly positive.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

}  // namespace grover_qa
