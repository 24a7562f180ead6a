#include "levymet/solver2d_iso.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "levymet/errors.hpp"
#include "levymet/quadrature.hpp"
#include "levymet/specfun.hpp"

namespace levymet {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngularTol = 1e-10;

double kernel_in_angle(double s, double r, double theta, double alpha, double lambda) {
  // rho^2 = (s - r)^2 + 4 s r sin^2(theta / 2) avoids cancellation for s ~ r
  const double sh = std::sin(0.5 * theta);
  const double rho2 = (s - r) * (s - r) + 4.0 * s * r * sh * sh;
  const double rho = std::sqrt(rho2);
  return std::exp(-lambda * rho) * std::pow(rho2, -0.5 * (alpha + 2.0));
}

double f_between(double s, double r, double lo, const ModelParams& p) {
  if (lo >= kPi) return 0.0;
  auto g = [&](double t) { return kernel_in_angle(s, r, t, p.alpha, p.lambda); };
  if (r == 0.0) return (kPi - lo) * g(0.0);
  const double scale = std::max(std::abs(s - r) / std::sqrt(s * r), 1e-12);
  std::vector<double> breaks;
  for (double t = scale / 4.0; t < kPi; t *= 2.0) breaks.push_back(lo + t);
  const quadrature::QuadOptions opts{kAngularTol, 0.0, 4000};
  return quadrature::integrate(g, lo, kPi, opts, breaks).value;
}

}  // namespace

double c_tilde_alpha(double alpha) { return c_alpha(alpha) / kPi; }

double boundary_distance(double r, double theta, double R) {
  const double sn = r * std::sin(theta);
  const double c = r * std::cos(theta);
  const double root = std::sqrt(R * R - sn * sn);
  return c > 0.0 ? (R - r) * (R + r) / (root + c) : root - c;
}

double angular_f1(double s, double r, const ModelParams& params) {
  if (!(s > 0.0) || !(r >= 0.0) || s == r) {
    throw DomainError("angular_f1: needs s > 0, r >= 0 and s != r");
  }
  return f_between(s, r, 0.0, params);
}

double window_angle(double s, double r, double h) {
  if (s <= 0.0 || r <= 0.0) return 0.0;
  const double c = (s * s + r * r - h * h) / (2.0 * s * r);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double angular_f2(double s, double r, double h, const ModelParams& params) {
  if (!(s > 0.0)) throw DomainError("angular_f2: s must be positive");
  const double lo = window_angle(s, r, h);
  if (s == r && lo == 0.0) throw DomainError("angular_f2: window does not cut the circle");
  return f_between(s, r, lo, params);
}

double boundary_tail(double r, const ModelParams& params) {
  const double R = params.half_width;
  if (!(r >= 0.0 && r < R)) throw DomainError("boundary_tail: r must lie in [0, R)");
  auto g = [&](double t) { return tail_mass(boundary_distance(r, t, R), params.alpha, params.lambda); };
  if (r == 0.0) return 2.0 * kPi * g(0.0);
  // r~ ~ (R - r) + (r R / 2(R - r)) theta^2 near theta = 0
  const double scale = std::min(kPi, std::sqrt((R - r) * (R - r) / (r * R)));
  std::vector<double> breaks;
  for (double t = scale / 4.0; t < kPi; t *= 2.0) breaks.push_back(t);
  const quadrature::QuadOptions opts{kAngularTol, 0.0, 4000};
  return 2.0 * quadrature::integrate(g, 0.0, kPi, opts, breaks).value;
}

double c0_coefficient(double h, const ModelParams& params) {
  if (!(h > 0.0)) throw DomainError("c0_coefficient: h must be positive");
  const double a = params.alpha;
  const double lam = params.lambda;
  // (pi/2) int_0^h rho^(1-alpha) e^(-lambda rho) drho
  if (lam == 0.0) return 0.5 * kPi * std::pow(h, 2.0 - a) / (2.0 - a);
  return 0.5 * kPi * std::pow(lam, a - 2.0) * specfun::lower_incomplete_gamma(2.0 - a, lam * h);
}

AngularKernels compute_kernels(const ModelParams& params, const RadialGrid& grid) {
  const int J = grid.J;
  AngularKernels K{grid, linalg::DenseMatrix(J + 1, J + 1), std::vector<double>(J)};
  for (int i = 1; i <= J; ++i) {
    for (int k = i + 1; k <= J; ++k) {
      const double v = angular_f1(grid.node(k), grid.node(i), params);
      K.f1(k, i) = v;
      K.f1(i, k) = v;
    }
  }
  // column 0 (r = 0) only feeds row 0, which uses the radial form directly
  for (int i = 0; i < J; ++i) K.tail[i] = boundary_tail(grid.node(i), params);
  return K;
}

linalg::DenseSystem assemble_iso(const ModelParams& params, int J) {
  params.validate();
  if (J < 8) throw InvalidParams("assemble_iso: resolution J must be at least 8");
  const RadialGrid grid{J, params.half_width};
  const double h = grid.h();
  const double ct = params.intensity * c_tilde_alpha(params.alpha);
  const double local = params.diffusion / 2.0 + ct * c0_coefficient(h, params);
  const AngularKernels K = compute_kernels(params, grid);

  linalg::DenseSystem sys{linalg::DenseMatrix(J, J), std::vector<double>(J, -1.0)};
  auto& A = sys.matrix;

  // r = 0: Laplacian 4 (U1 - U0) / h^2, jump integral in the radial variable
  A(0, 1) += 4.0 * local / (h * h);
  A(0, 0) -= 4.0 * local / (h * h);
  for (int k = 1; k <= J; ++k) {
    const double s = grid.node(k);
    const double w = (k == 1 || k == J) ? 0.5 * h : h;
    const double c = 2.0 * kPi * ct * w * std::exp(-params.lambda * s) * std::pow(s, -params.alpha - 1.0);
    if (k < J) A(0, k) += c;
    A(0, 0) -= c;
  }
  A(0, 0) -= ct * K.tail[0];

  for (int i = 1; i < J; ++i) {
    const double r = grid.node(i);
    const double second = local / (h * h);
    const double first = (local / r + params.drift(r)) / (2.0 * h);
    A(i, i - 1) += second - first;
    A(i, i) -= 2.0 * second;
    if (i + 1 < J) A(i, i + 1) += second + first;
    // trapezoid in s over (0, R); the window cells merge since F2 = F1 at s = r +- h
    for (int k = 1; k <= J; ++k) {
      if (k == i) continue;
      const double w = k == J ? 0.5 * h : h;
      const double c = 2.0 * ct * w * grid.node(k) * K.f1(k, i);
      if (k < J) A(i, k) += c;
      A(i, i) -= c;
    }
    A(i, i) -= ct * K.tail[i];
  }
  return sys;
}

double RadialSolution::at(double r) const {
  r = std::abs(r);
  const double h = grid.h();
  if (r >= grid.radius) return 0.0;
  const double t = r / h;
  const int i = std::min(static_cast<int>(t), grid.J - 1);
  const double frac = t - i;
  const double lo = values[i];
  const double hi = i + 1 < grid.J ? values[i + 1] : 0.0;
  return lo + frac * (hi - lo);
}

double RadialSolution::revolved(double x1, double x2) const { return at(std::hypot(x1, x2)); }

RadialSolution solve_iso(const ModelParams& params, int J) {
  return {RadialGrid{J, params.half_width}, linalg::solve_dense(assemble_iso(params, J)), params};
}

ConvergenceReport iso_self_convergence(const ModelParams& params, std::span<const int> resolutions,
                                       int reference_J) {
  if (resolutions.empty()) throw InvalidParams("iso_self_convergence: empty resolution list");
  for (int J : resolutions) {
    if (J >= reference_J) {
      throw InvalidParams("iso_self_convergence: resolutions must be below the reference");
    }
  }
  const double ref = solve_iso(params, reference_J).values[0];
  ConvergenceReport report;
  for (int J : resolutions) {
    report.resolutions.push_back(J);
    report.mesh_sizes.push_back(params.half_width / J);
    report.errors.push_back(std::abs(solve_iso(params, J).values[0] - ref));
  }
  if (report.errors.size() >= 2) report.fitted_order = fit_order(report.mesh_sizes, report.errors);
  return report;
}

}  // namespace levymet
