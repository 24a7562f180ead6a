#include "levymet/convergence.hpp"

#include <cmath>
#include <stdexcept>

namespace levymet {

double fit_order(std::span<const double> mesh_sizes, std::span<const double> errors) {
  if (mesh_sizes.size() != errors.size() || mesh_sizes.size() < 2) {
    throw std::invalid_argument("fit_order: need at least two (h, error) pairs");
  }
  const double n = static_cast<double>(errors.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(mesh_sizes[i] > 0.0)) {
      throw std::invalid_argument("fit_order: errors and mesh sizes must be positive");
    }
    const double lx = std::log(mesh_sizes[i]);
    const double ly = std::log(errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_order: mesh sizes must differ");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace levymet
