#include "levymet/linalg.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "levymet/errors.hpp"

namespace levymet::linalg {

std::vector<double> DenseMatrix::multiply(std::span<const double> v) const {
  if (v.size() != cols_) throw std::invalid_argument("DenseMatrix::multiply: size mismatch");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto r = row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += r[j] * v[j];
    out[i] = s;
  }
  return out;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

std::vector<double> solve_dense(const DenseSystem& system) {
  const auto& A = system.matrix;
  const std::size_t n = A.rows();
  if (A.cols() != n) throw std::invalid_argument("solve_dense: matrix is not square");
  if (system.rhs.size() != n) throw std::invalid_argument("solve_dense: rhs size mismatch");

  DenseMatrix lu = A;
  std::vector<double> x = system.rhs;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(lu(i, j))) throw std::invalid_argument("solve_dense: non-finite entry");
      scale = std::max(scale, std::abs(lu(i, j)));
    }
  }
  const double threshold = 1e-14 * scale;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        piv = i;
      }
    }
    if (!(best > threshold)) {
      throw SingularMatrixError("solve_dense: pivot " + std::to_string(k) +
                                " below relative threshold");
    }
    if (piv != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(piv).begin());
      std::swap(x[k], x[piv]);
    }
    const auto rk = lu.row(k);
    const double inv = 1.0 / rk[k];
    for (std::size_t i = k + 1; i < n; ++i) {
      auto ri = lu.row(i);
      const double m = ri[k] * inv;
      if (m == 0.0) continue;
      ri[k] = m;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= m * rk[j];
      x[i] -= m * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    const auto rk = lu.row(k);
    double s = x[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= rk[j] * x[j];
    x[k] = s / rk[k];
  }
  return x;
}

// ---------------------------------------------------------------------------
// Toeplitz via circulant embedding

struct ToeplitzOperator::Plans {
  std::size_t m = 0;  // embedding length 2n
  double* real_buf = nullptr;
  fftw_complex* spec_buf = nullptr;
  std::vector<std::complex<double>> symbol;  // FFT of the circulant column
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Plans(std::size_t len) : m(len) {
    real_buf = fftw_alloc_real(m);
    spec_buf = fftw_alloc_complex(m / 2 + 1);
    forward = fftw_plan_dft_r2c_1d(static_cast<int>(m), real_buf, spec_buf, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(static_cast<int>(m), spec_buf, real_buf, FFTW_ESTIMATE);
  }
  ~Plans() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(real_buf);
    fftw_free(spec_buf);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

ToeplitzOperator::ToeplitzOperator(const ToeplitzSym& t, std::vector<double> diag)
    : n_(t.size()), diag_(std::move(diag)) {
  if (diag_.size() != n_) throw std::invalid_argument("ToeplitzOperator: diagonal size mismatch");
  if (n_ == 0) return;
  plans_ = std::make_unique<Plans>(2 * n_);
  const std::size_t m = plans_->m;
  // circulant column [t0 .. t_{n-1}, 0, t_{n-1} .. t1]
  std::fill(plans_->real_buf, plans_->real_buf + m, 0.0);
  for (std::size_t k = 0; k < n_; ++k) plans_->real_buf[k] = t.first_column[k];
  for (std::size_t k = 1; k < n_; ++k) plans_->real_buf[m - k] = t.first_column[k];
  fftw_execute(plans_->forward);
  plans_->symbol.resize(m / 2 + 1);
  for (std::size_t k = 0; k <= m / 2; ++k) {
    plans_->symbol[k] = {plans_->spec_buf[k][0], plans_->spec_buf[k][1]};
  }
}

ToeplitzOperator::~ToeplitzOperator() = default;
ToeplitzOperator::ToeplitzOperator(ToeplitzOperator&&) noexcept = default;
ToeplitzOperator& ToeplitzOperator::operator=(ToeplitzOperator&&) noexcept = default;

void ToeplitzOperator::apply(std::span<const double> v, std::span<double> out) const {
  if (v.size() != n_ || out.size() != n_) {
    throw std::invalid_argument("ToeplitzOperator::apply: size mismatch");
  }
  if (n_ == 0) return;
  Plans& p = *plans_;
  std::fill(p.real_buf, p.real_buf + p.m, 0.0);
  std::copy(v.begin(), v.end(), p.real_buf);
  fftw_execute(p.forward);
  for (std::size_t k = 0; k <= p.m / 2; ++k) {
    const std::complex<double> z =
        std::complex<double>(p.spec_buf[k][0], p.spec_buf[k][1]) * p.symbol[k];
    p.spec_buf[k][0] = z.real();
    p.spec_buf[k][1] = z.imag();
  }
  fftw_execute(p.backward);
  const double inv_m = 1.0 / static_cast<double>(p.m);
  for (std::size_t i = 0; i < n_; ++i) out[i] = p.real_buf[i] * inv_m + diag_[i] * v[i];
}

std::vector<double> toeplitz_matvec(const ToeplitzSym& t, std::span<const double> diag,
                                    std::span<const double> v) {
  if (diag.size() != t.size() || v.size() != t.size()) {
    throw std::invalid_argument("toeplitz_matvec: length mismatch");
  }
  ToeplitzOperator op(t, std::vector<double>(diag.begin(), diag.end()));
  std::vector<double> out(v.size());
  op.apply(v, out);
  return out;
}

// ---------------------------------------------------------------------------
// CSR

void CsrMatrix::apply(std::span<const double> v, std::span<double> out) const {
  if (v.size() != cols || out.size() != rows) {
    throw std::invalid_argument("CsrMatrix::apply: size mismatch");
  }
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += values[p] * v[col_idx[p]];
    out[i] = s;
  }
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      if (col_idx[p] == i) d[i] += values[p];
    }
  }
  return d;
}

DenseMatrix CsrMatrix::to_dense() const {
  DenseMatrix A(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) A(i, col_idx[p]) += values[p];
  }
  return A;
}

// ---------------------------------------------------------------------------
// GMRES

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double norm_inf(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

std::vector<double> solve_iterative(const LinearOperator& apply, std::span<const double> b,
                                    const IterativeOptions& opts, IterativeStats* stats) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("solve_iterative: tol must be positive");
  const std::size_t n = b.size();
  const bool precond = !opts.jacobi_diagonal.empty();
  if (precond && opts.jacobi_diagonal.size() != n) {
    throw std::invalid_argument("solve_iterative: preconditioner size mismatch");
  }
  std::vector<double> inv_diag;
  if (precond) {
    inv_diag.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (opts.jacobi_diagonal[i] == 0.0) {
        throw std::invalid_argument("solve_iterative: zero diagonal in Jacobi preconditioner");
      }
      inv_diag[i] = 1.0 / opts.jacobi_diagonal[i];
    }
  }

  std::vector<double> x(n, 0.0);
  const double bnorm = norm2(b);
  if (stats) *stats = {};
  if (bnorm == 0.0) return x;
  const double target = opts.tol * bnorm;
  const int m = std::max(1, opts.restart);

  std::vector<std::vector<double>> V(m + 1, std::vector<double>(n));
  std::vector<double> H((m + 1) * m);
  auto h = [&](int i, int j) -> double& { return H[i * m + j]; };
  std::vector<double> cs(m), sn(m), g(m + 1), y(m);
  std::vector<double> r(n), w(n), z(n);

  int total = 0;
  double resid = 0.0;
  while (true) {
    apply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    resid = norm2(r);
    if (resid <= target) break;
    if (total >= opts.max_iterations) {
      throw ConvergenceError("GMRES did not reach relative residual " + std::to_string(opts.tol) +
                             " within " + std::to_string(opts.max_iterations) +
                             " iterations (reached " + std::to_string(resid / bnorm) + ")");
    }
    for (std::size_t i = 0; i < n; ++i) V[0][i] = r[i] / resid;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = resid;

    int k = 0;
    for (; k < m && total < opts.max_iterations; ++k, ++total) {
      if (precond) {
        for (std::size_t i = 0; i < n; ++i) z[i] = V[k][i] * inv_diag[i];
        apply(z, w);
      } else {
        apply(V[k], w);
      }
      for (int i = 0; i <= k; ++i) {
        double dot = 0.0;
        for (std::size_t q = 0; q < n; ++q) dot += w[q] * V[i][q];
        h(i, k) = dot;
        for (std::size_t q = 0; q < n; ++q) w[q] -= dot * V[i][q];
      }
      const double wn = norm2(w);
      h(k + 1, k) = wn;
      if (wn > 0.0) {
        for (std::size_t q = 0; q < n; ++q) V[k + 1][q] = w[q] / wn;
      }
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * h(i, k) + sn[i] * h(i + 1, k);
        h(i + 1, k) = -sn[i] * h(i, k) + cs[i] * h(i + 1, k);
        h(i, k) = t;
      }
      const double denom = std::hypot(h(k, k), h(k + 1, k));
      cs[k] = denom == 0.0 ? 1.0 : h(k, k) / denom;
      sn[k] = denom == 0.0 ? 0.0 : h(k + 1, k) / denom;
      h(k, k) = denom;
      h(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      if (std::abs(g[k + 1]) <= 0.5 * target || wn == 0.0) {
        ++k;
        ++total;
        break;
      }
    }
    // back substitution for the k-dimensional least-squares solution
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= h(i, j) * y[j];
      y[i] = s / h(i, i);
    }
    std::fill(z.begin(), z.end(), 0.0);
    for (int j = 0; j < k; ++j) {
      for (std::size_t q = 0; q < n; ++q) z[q] += y[j] * V[j][q];
    }
    for (std::size_t q = 0; q < n; ++q) x[q] += precond ? z[q] * inv_diag[q] : z[q];
  }
  if (stats) *stats = {total, resid / bnorm};
  return x;
}

}  // namespace levymet::linalg
