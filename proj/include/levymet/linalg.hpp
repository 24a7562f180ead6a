#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace levymet::linalg {

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<double> multiply(std::span<const double> v) const;
  double frobenius_norm() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct DenseSystem {
  DenseMatrix matrix;
  std::vector<double> rhs;
};

/// LU with partial pivoting. Throws SingularMatrixError when a pivot falls
/// below 1e-14 times the largest entry of A.
std::vector<double> solve_dense(const DenseSystem& system);

/// Symmetric Toeplitz matrix given by its first column; entry 0 is the diagonal.
struct ToeplitzSym {
  std::vector<double> first_column;
  std::size_t size() const { return first_column.size(); }
};

/// Reusable O(n log n) product with T + diag(d) via circulant embedding of
/// size 2n and real-to-complex FFTs.
class ToeplitzOperator {
 public:
  ToeplitzOperator(const ToeplitzSym& t, std::vector<double> diag);
  ~ToeplitzOperator();
  ToeplitzOperator(ToeplitzOperator&&) noexcept;
  ToeplitzOperator& operator=(ToeplitzOperator&&) noexcept;

  std::size_t size() const { return n_; }
  void apply(std::span<const double> v, std::span<double> out) const;

 private:
  struct Plans;
  std::size_t n_ = 0;
  std::vector<double> diag_;
  std::unique_ptr<Plans> plans_;
};

/// (T + diag(d)) v. Throws std::invalid_argument on length mismatch.
std::vector<double> toeplitz_matvec(const ToeplitzSym& t, std::span<const double> diag,
                                    std::span<const double> v);

/// Compressed sparse row matrix.
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr;  // rows + 1 entries
  std::vector<std::size_t> col_idx;
  std::vector<double> values;

  void apply(std::span<const double> v, std::span<double> out) const;
  std::vector<double> diagonal() const;
  std::size_t row_nonzeros(std::size_t i) const { return row_ptr[i + 1] - row_ptr[i]; }
  DenseMatrix to_dense() const;
};

/// y = A x for a linear operator of fixed size.
using LinearOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

struct IterativeOptions {
  double tol = 1e-10;         ///< relative residual target ||A x - b|| <= tol ||b||
  int restart = 80;
  int max_iterations = 20000; ///< total inner iterations across restarts
  /// Optional diagonal of A for Jacobi (right) preconditioning.
  std::vector<double> jacobi_diagonal;
};

struct IterativeStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Restarted GMRES (right-preconditioned, modified Gram-Schmidt, Givens).
/// Throws ConvergenceError if the residual target is not met.
std::vector<double> solve_iterative(const LinearOperator& apply, std::span<const double> b,
                                    const IterativeOptions& opts = {},
                                    IterativeStats* stats = nullptr);

double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);

}  // namespace levymet::linalg
