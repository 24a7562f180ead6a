#pragma once

// Real special functions used by the tempered-Levy discretizations:
// incomplete gamma functions (including negative non-integer first
// parameter), the tail integral written in the literature through the
// Whittaker W function, and the Riemann zeta function on the real line.
//
// All routines target 1e-10 relative accuracy in their documented ranges
// and are pure functions (thread-safe).

namespace levymet::specfun {

/// A value with an a-posteriori estimate of its relative error.
struct SpecFunResult {
  double value = 0.0;
  double est_rel_error = 0.0;
};

/// Upper incomplete gamma function Gamma(a, x) = int_x^inf t^(a-1) e^(-t) dt.
///
/// Supported for a in (-2, 2] excluding the non-positive integers, and x > 0.
/// Negative parameters are reached by downward recurrence
/// Gamma(a, x) = (Gamma(a+1, x) - x^a e^(-x)) / a.
/// Throws DomainError outside that range.
SpecFunResult upper_incomplete_gamma_e(double a, double x);
double upper_incomplete_gamma(double a, double x);

/// int_s^inf t^(-rho) e^(-t) dt, i.e. Gamma(1 - rho, s); rho in (0, 3), s > 0.
double whittaker_tail(double rho, double s);

/// Unnormalized lower incomplete gamma gamma(a, x) = int_0^x t^(a-1) e^(-t) dt,
/// a > 0, x >= 0.
double lower_incomplete_gamma(double a, double x);

/// Regularized lower incomplete gamma P(a, x) in [0, 1]; a > 0, x >= 0.
double lower_regularized_gamma(double a, double x);

/// Q(a, x) = 1 - P(a, x).
double upper_regularized_gamma(double a, double x);

/// Riemann zeta on the real axis, s != 1. Accurate for s > -10; the
/// solvers only need s in (-3, 1).
SpecFunResult riemann_zeta_real_e(double s);
double riemann_zeta_real(double s);

}  // namespace levymet::specfun
