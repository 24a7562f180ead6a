#include "levymet/solver1d.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "levymet/errors.hpp"
#include "levymet/specfun.hpp"

namespace levymet {

namespace {

// int_{-a}^{b} y e^(-lambda|y|) |y|^(-1-alpha) dy in the principal-value sense.
double odd_moment_exact(double a, double b, double alpha, double lambda) {
  if (lambda == 0.0) return (std::pow(b, 1.0 - alpha) - std::pow(a, 1.0 - alpha)) / (1.0 - alpha);
  return std::pow(lambda, alpha - 1.0) *
         (specfun::upper_incomplete_gamma(1.0 - alpha, lambda * a) -
          specfun::upper_incomplete_gamma(1.0 - alpha, lambda * b));
}

}  // namespace

Operator1D assemble(const ModelParams& params, const Grid1D& grid, Scheme scheme) {
  params.validate();
  if (grid.J < 4) throw InvalidParams("assemble: resolution J must be at least 4");
  if (grid.half_width != params.half_width) {
    throw InvalidParams("assemble: grid half-width does not match the model");
  }
  const int J = grid.J;
  const int n = grid.interior_count();
  const double h = grid.h();
  const double alpha = params.alpha;
  const double lambda = params.lambda;
  const double kappa = params.intensity;
  const double ca = c_alpha(alpha);

  Operator1D op;
  op.grid = grid;
  op.c_h = params.diffusion / 2.0 -
           kappa * ca * specfun::riemann_zeta_real(alpha - 1.0) * std::pow(h, 2.0 - alpha);

  // w_k = e^(-lambda x_k) x_k^(-1-alpha) for k = 1 .. 2J, prefix sums for the row sums
  std::vector<double> w(2 * J + 1, 0.0);
  std::vector<double> prefix(2 * J + 1, 0.0);
  std::vector<double> prefix_y(2 * J + 1, 0.0);  // sums of x_k w_k
  for (int k = 1; k <= 2 * J; ++k) {
    const double xk = k * h;
    w[k] = std::exp(-lambda * xk) * std::pow(xk, -1.0 - alpha);
    prefix[k] = prefix[k - 1] + w[k];
    prefix_y[k] = prefix_y[k - 1] + xk * w[k];
  }
  const double c_tilde = kappa * ca * h;

  op.toeplitz.first_column.assign(n, 0.0);
  for (int k = 1; k < n; ++k) op.toeplitz.first_column[k] = c_tilde * w[k];

  op.diag_correction.resize(n);
  op.tail_diag.resize(n);
  op.drift.resize(n);
  op.moment_correction.assign(n, 0.0);
  for (int idx = 0; idx < n; ++idx) {
    const int j = grid.node_at(idx);
    // k runs from -J-j to J-j (k != 0); both end terms land on x = -L, L and carry 1/2
    const int left = J + j;
    const int right = J - j;
    const double row_sum = prefix[left] + prefix[right] - 0.5 * (w[left] + w[right]);
    op.diag_correction[idx] = -c_tilde * row_sum;
    const double x = grid.node(j);
    op.tail_diag[idx] =
        -kappa * ca * (tail_w(x, Side::left, params) + tail_w(x, Side::right, params));
    op.drift[idx] = params.drift(x);
    if (scheme == Scheme::corrected) {
      auto half_sum = [&](int N) { return h * (prefix_y[N] - 0.5 * N * h * w[N]); };
      const double discrete = half_sum(right) - half_sum(left);
      const double exact = odd_moment_exact(left * h, right * h, alpha, lambda);
      op.moment_correction[idx] = kappa * ca * (exact - discrete);
    }
  }

  op.local_lower.resize(n);
  op.local_diag.resize(n);
  op.local_upper.resize(n);
  const double second = op.c_h / (h * h);
  const double neighbour = op.toeplitz.first_column.size() > 1 ? op.toeplitz.first_column[1] : 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = op.drift[i] + op.moment_correction[i];
    const double half = a / (2.0 * h);
    double lo = second - half;
    double di = -2.0 * second;
    double up = second + half;
    if (scheme == Scheme::corrected && std::abs(half) > second + neighbour) {
      lo = second + (a < 0.0 ? -a / h : 0.0);
      up = second + (a > 0.0 ? a / h : 0.0);
      di = -2.0 * second - std::abs(a) / h;
    }
    op.local_lower[i] = lo;
    op.local_diag[i] = di;
    op.local_upper[i] = up;
  }
  return op;
}

linalg::DenseMatrix Operator1D::to_dense() const {
  const std::size_t n = size();
  linalg::DenseMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      A(i, k) = toeplitz.first_column[i > k ? i - k : k - i];
    }
    A(i, i) += diag_correction[i] + tail_diag[i] + local_diag[i];
    if (i > 0) A(i, i - 1) += local_lower[i];
    if (i + 1 < n) A(i, i + 1) += local_upper[i];
  }
  return A;
}

std::vector<double> Operator1D::diagonal() const {
  std::vector<double> d(size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = toeplitz.first_column[0] + diag_correction[i] + tail_diag[i] + local_diag[i];
  }
  return d;
}

linalg::LinearOperator Operator1D::linear_operator() const {
  const std::size_t n = size();
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = diag_correction[i] + tail_diag[i] + local_diag[i];
  auto toep = std::make_shared<linalg::ToeplitzOperator>(toeplitz, std::move(diag));
  return [toep, lower = local_lower, upper = local_upper](std::span<const double> v,
                                                         std::span<double> out) {
    toep->apply(v, out);
    const std::size_t m = v.size();
    for (std::size_t i = 0; i < m; ++i) {
      if (i > 0) out[i] += lower[i] * v[i - 1];
      if (i + 1 < m) out[i] += upper[i] * v[i + 1];
    }
  };
}

double Solution1D::at_node(int j) const {
  if (j <= -grid.J || j >= grid.J) return 0.0;
  return values[grid.index(j)];
}

std::vector<double> Solution1D::nodes() const {
  std::vector<double> x(values.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = grid.node(grid.node_at(static_cast<int>(i)));
  return x;
}

std::vector<double> solve_operator(const Operator1D& op, std::span<const double> rhs,
                                   LinearSolver solver) {
  if (rhs.size() != op.size()) throw std::invalid_argument("solve_operator: rhs size mismatch");
  if (solver == LinearSolver::dense) {
    return linalg::solve_dense({op.to_dense(), std::vector<double>(rhs.begin(), rhs.end())});
  }
  linalg::IterativeOptions opts;
  opts.tol = 1e-12;
  opts.jacobi_diagonal = op.diagonal();
  return linalg::solve_iterative(op.linear_operator(), rhs, opts);
}

Solution1D solve_met(const ModelParams& params, int J, LinearSolver solver, Scheme scheme) {
  const Grid1D grid{J, params.half_width};
  const Operator1D op = assemble(params, grid, scheme);
  const std::vector<double> rhs(op.size(), -1.0);
  return {grid, solve_operator(op, rhs, solver), params};
}

double manufactured_rhs(double x, const ModelParams& params) {
  params.validate();
  if (params.half_width != 1.0) {
    throw InvalidParams("manufactured_rhs: the manufactured solution lives on (-1, 1)");
  }
  if (!(std::abs(x) < 1.0)) throw DomainError("manufactured_rhs: x must lie in (-1, 1)");
  const double alpha = params.alpha;
  const double lambda = params.lambda;
  const double ca = c_alpha(alpha);
  const double dr = 1.0 - x;  // distance to the right boundary
  const double dl = 1.0 + x;

  // C_alpha int_{-1-x}^{1-x} (-2xy - y^2) e^(-lambda|y|) |y|^(-1-alpha) dy, split
  // into the odd part (principal value) and the even part.
  double odd, even;
  if (lambda > 0.0) {
    odd = 2.0 * x * std::pow(lambda, alpha - 1.0) *
          (specfun::upper_incomplete_gamma(1.0 - alpha, lambda * dr) -
           specfun::upper_incomplete_gamma(1.0 - alpha, lambda * dl));
    even = -std::pow(lambda, alpha - 2.0) *
           (specfun::lower_incomplete_gamma(2.0 - alpha, lambda * dr) +
            specfun::lower_incomplete_gamma(2.0 - alpha, lambda * dl));
  } else {
    odd = 2.0 * x * (std::pow(dl, 1.0 - alpha) - std::pow(dr, 1.0 - alpha)) / (1.0 - alpha);
    even = -(std::pow(dr, 2.0 - alpha) + std::pow(dl, 2.0 - alpha)) / (2.0 - alpha);
  }
  const double u = 1.0 - x * x;
  const double tails = tail_w(x, Side::left, params) + tail_w(x, Side::right, params);
  const double nonlocal = ca * (odd + even - u * tails);

  const double local = params.drift(x) * (-2.0 * x) + params.diffusion / 2.0 * (-2.0);
  return local + params.intensity * nonlocal;
}

ConvergenceReport verify_convergence(const ModelParams& params, std::span<const int> resolutions,
                                     LinearSolver solver, Scheme scheme) {
  if (resolutions.empty()) throw InvalidParams("verify_convergence: empty resolution list");
  ConvergenceReport report;
  for (int J : resolutions) {
    const Grid1D grid{J, params.half_width};
    const Operator1D op = assemble(params, grid, scheme);
    std::vector<double> rhs(op.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      rhs[i] = manufactured_rhs(grid.node(grid.node_at(static_cast<int>(i))), params);
    }
    const std::vector<double> U = solve_operator(op, rhs, solver);
    double sq = 0.0;
    for (std::size_t i = 0; i < U.size(); ++i) {
      const double x = grid.node(grid.node_at(static_cast<int>(i)));
      const double e = U[i] - (1.0 - x * x);
      sq += e * e;
    }
    report.resolutions.push_back(J);
    report.mesh_sizes.push_back(grid.h());
    report.errors.push_back(std::sqrt(grid.h() * sq));
  }
  if (report.errors.size() >= 2) report.fitted_order = fit_order(report.mesh_sizes, report.errors);
  return report;
}

}  // namespace levymet
