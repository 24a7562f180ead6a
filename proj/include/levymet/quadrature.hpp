#pragma once

#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace levymet::quadrature {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subdivisions = 2000;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature on [a, b] (finite).
/// The initial partition uses `breakpoints` (sorted, inside (a, b)), which is
/// how callers grade panels toward endpoint singularities.
/// Throws ConvergenceError if the subdivision budget is exhausted.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts = {}, std::span<const double> breakpoints = {});

/// Breakpoints a + (b - a) * ratio^k, k = 1..levels, geometrically graded toward a.
std::vector<double> graded_breakpoints(double a, double b, double ratio, int levels);

}  // namespace levymet::quadrature
