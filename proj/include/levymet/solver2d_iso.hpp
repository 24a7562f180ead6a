#pragma once

// Radially symmetric mean exit time on the disc |x| < R under the isotropic
// tempered measure C~ e^(-lambda|y|) |y|^(-2-alpha) dy. The jump integral is
// written in polar coordinates around the origin: jumps landing at radius s
// are weighted by s F1(s, r), where F1 integrates the kernel over the angle;
// jumps leaving the disc give the boundary tail; the small ball B_h(x)
// becomes C0 [u'' + u'/r].

#include <vector>

#include "levymet/convergence.hpp"
#include "levymet/kernel.hpp"
#include "levymet/linalg.hpp"

namespace levymet {

/// Nodes r_i = i h, h = R / J, unknowns i = 0 .. J-1; r_J = R is the boundary.
struct RadialGrid {
  int J = 0;
  double radius = 1.0;

  double h() const { return radius / J; }
  double node(int i) const { return i * h(); }
};

/// 1 / (2 pi |Gamma(-alpha)|).
double c_tilde_alpha(double alpha);

/// int_0^pi e^(-lambda rho) rho^(-alpha-2) dtheta, rho^2 = s^2 + r^2 - 2 s r cos(theta).
/// Needs s > 0, r >= 0, s != r.
double angular_f1(double s, double r, const ModelParams& params);

/// Angle at which the circle of radius s leaves the ball B_h((r, 0)); zero
/// when the whole circle lies outside the ball.
double window_angle(double s, double r, double h);

/// F1 with the lower limit raised to window_angle(s, r, h); needs s > 0.
double angular_f2(double s, double r, double h, const ModelParams& params);

/// Distance from (r, 0) to the circle |x| = R along direction theta,
/// sqrt(R^2 - r^2 sin^2) - r cos, in a form free of cancellation.
double boundary_distance(double r, double theta, double R);

/// 2 int_0^pi tail_mass(r~(theta)) dtheta with r~ the distance from (r, 0) to
/// the circle |x| = R along direction theta. Needs 0 <= r < R.
double boundary_tail(double r, const ModelParams& params);

/// Factor of [u'' + u'/r] left by the second-order Taylor term on the small
/// ball: (1/4) int_{B_h} |y|^2 e^(-lambda|y|) |y|^(-2-alpha) dy.
double c0_coefficient(double h, const ModelParams& params);

/// Precomputed kernel data for one grid. f1 is (J+1) x (J+1) with f1(k, i) =
/// F1(s_k, r_i) for k != i, k >= 1 (row 0 and the diagonal are unused).
struct AngularKernels {
  RadialGrid grid;
  linalg::DenseMatrix f1;
  std::vector<double> tail;  ///< boundary_tail(r_i), i = 0 .. J-1
};

AngularKernels compute_kernels(const ModelParams& params, const RadialGrid& grid);

/// Dense system for U_0 .. U_{J-1}; right-hand side -1.
/// Throws InvalidParams for bad params or J < 8.
linalg::DenseSystem assemble_iso(const ModelParams& params, int J);

struct RadialSolution {
  RadialGrid grid;
  std::vector<double> values;
  ModelParams params;

  /// Piecewise-linear interpolant with U(R) = 0, zero beyond R.
  double at(double r) const;
  /// The radial profile revolved into the plane.
  double revolved(double x1, double x2) const;
};

RadialSolution solve_iso(const ModelParams& params, int J);

/// |U_J(0) - U_ref(0)| for each J, with U_ref computed at reference_J.
ConvergenceReport iso_self_convergence(const ModelParams& params, std::span<const int> resolutions,
                                       int reference_J = 640);

}  // namespace levymet
