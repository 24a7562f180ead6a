#pragma once

#include <span>
#include <vector>

namespace levymet {

/// Errors over a sequence of resolutions and the fitted log-log order.
struct ConvergenceReport {
  std::vector<int> resolutions;
  std::vector<double> mesh_sizes;
  std::vector<double> errors;
  double fitted_order = 0.0;
};

/// Least-squares slope of log(error) against log(h). Needs at least two
/// points with positive errors; throws std::invalid_argument otherwise.
double fit_order(std::span<const double> mesh_sizes, std::span<const double> errors);

}  // namespace levymet
