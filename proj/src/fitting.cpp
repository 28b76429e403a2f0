#include "grover_qa/fitting.hpp"

#include <cmath>

#include "grover_qa/errors.hpp"

namespace grover_qa {

ScalingFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("fit: x and y differ in length");
  if (x.size() < 3) throw DomainError("fit: need at least 3 points");

  const double count = static_cast<double>(x.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= count;
  mean_y /= count;

  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
  }
  if (!(sxx > 0.0)) throw DomainError("fit: x values are all equal");

  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
    fit.points.emplace_back(x[i], y[i]);
  }
  fit.rms_residual = std::sqrt(ss / count);
  return fit;
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("fit: x and y differ in length");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) {
      throw DomainError("power-law fit needs strictly positive data");
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const ScalingFit line = fit_line(lx, ly);
  return {line.slope, std::exp(line.intercept), line.rms_residual};
}

}  // namespace grover_qa
