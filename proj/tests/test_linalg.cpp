#include <cmath>
#include <random>

#include "doctest.h"
#include "levymet/errors.hpp"
#include "levymet/linalg.hpp"
#include "levymet/solver1d.hpp"
#include "test_util.hpp"

using namespace levymet;
using namespace levymet::linalg;

namespace {

DenseMatrix dense_toeplitz(const ToeplitzSym& t, std::span<const double> diag) {
  const std::size_t n = t.size();
  DenseMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) A(i, k) = t.first_column[i > k ? i - k : k - i];
    A(i, i) += diag[i];
  }
  return A;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("dense solve small systems") {
  DenseMatrix I(3, 3);
  for (int i = 0; i < 3; ++i) I(i, i) = 1.0;
  const auto u = solve_dense({I, {-1.0, -1.0, -1.0}});
  for (double v : u) CHECK(v == -1.0);

  DenseMatrix A(2, 2);
  A(0, 0) = 2.0;
  A(0, 1) = 1.0;
  A(1, 0) = 1.0;
  A(1, 1) = 2.0;
  const auto x = solve_dense({A, {3.0, 3.0}});
  CHECK(std::abs(x[0] - 1.0) <= 1e-15);
  CHECK(std::abs(x[1] - 1.0) <= 1e-15);

  DenseMatrix S(2, 2);
  S(0, 0) = 1.0;
  S(0, 1) = 2.0;
  S(1, 0) = 2.0;
  S(1, 1) = 4.0;
  CHECK_THROWS_AS(solve_dense({S, {1.0, 1.0}}), SingularMatrixError);
}

TEST_CASE("dense solve residual bound on random systems") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 50;
    DenseMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) A(i, k) = U(rng);
      A(i, i) += 10.0;
    }
    std::vector<double> ustar(n);
    for (auto& v : ustar) v = U(rng);
    const std::vector<double> b = A.multiply(ustar);
    const std::vector<double> u = solve_dense({A, b});
    std::vector<double> r = A.multiply(u);
    for (std::size_t i = 0; i < n; ++i) r[i] -= b[i];
    CHECK(norm2(r) <= 1e-10 * (A.frobenius_norm() * norm2(u) + norm2(b)));
    CHECK(max_abs_diff(u, ustar) <= 1e-12);
  }
}

TEST_CASE("toeplitz FFT product matches dense") {
  SUBCASE("hand-built n = 4") {
    ToeplitzSym t{{0.0, 3.0, 2.0, 1.0}};
    const std::vector<double> d{1.0, -1.0, 2.0, 0.5};
    const std::vector<double> v{1.0, 2.0, -3.0, 4.0};
    // row i: d_i v_i + sum_k t_|i-k| v_k
    const std::vector<double> want{1.0 + 6.0 - 6.0 + 4.0, 3.0 - 2.0 - 9.0 + 8.0,
                                   2.0 + 6.0 - 6.0 + 12.0, 1.0 + 4.0 - 9.0 + 2.0};
    const auto got = toeplitz_matvec(t, d, v);
    CHECK(max_abs_diff(got, want) <= 1e-12);
  }
  SUBCASE("zero vector and zero column") {
    ToeplitzSym t{{0.0, 1.0, 0.5, 0.25, 0.125}};
    const std::vector<double> d(5, 2.0);
    const std::vector<double> z(5, 0.0);
    for (double v : toeplitz_matvec(t, d, z)) CHECK(v == 0.0);
    ToeplitzSym zero{std::vector<double>(5, 0.0)};
    const std::vector<double> v{1.0, -2.0, 3.0, -4.0, 5.0};
    const auto got = toeplitz_matvec(zero, d, v);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(got[i] - 2.0 * v[i]) <= 1e-14);
  }
  SUBCASE("random sizes") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (std::size_t n : {1u, 2u, 7u, 37u, 128u, 319u}) {
      ToeplitzSym t{std::vector<double>(n)};
      for (auto& c : t.first_column) c = U(rng);
      std::vector<double> d(n), v(n);
      for (auto& x : d) x = U(rng);
      for (auto& x : v) x = U(rng);
      const auto fast = toeplitz_matvec(t, d, v);
      const auto slow = dense_toeplitz(t, d).multiply(v);
      CHECK(norm2(std::vector<double>(fast)) > 0.0);
      std::vector<double> diff(n);
      for (std::size_t i = 0; i < n; ++i) diff[i] = fast[i] - slow[i];
      CHECK(norm2(diff) <= 1e-12 * norm2(slow));
    }
  }
  SUBCASE("length mismatch") {
    ToeplitzSym t{{0.0, 1.0, 2.0}};
    CHECK_THROWS_AS(toeplitz_matvec(t, std::vector<double>(2), std::vector<double>(3)),
                    std::invalid_argument);
  }
}

TEST_CASE("operator application is linear") {
  ModelParams p;
  p.alpha = 0.7;
  p.lambda = 0.05;
  p.drift = DriftSpec::linear(-1.0);
  const Operator1D op = assemble(p, Grid1D{30, 1.0});
  const LinearOperator A = op.linear_operator();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const std::size_t n = op.size();
  std::vector<double> u(n), v(n), w(n), Au(n), Av(n), Aw(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = U(rng);
    v[i] = U(rng);
    w[i] = 2.5 * u[i] - 0.75 * v[i];
  }
  A(u, Au);
  A(v, Av);
  A(w, Aw);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(Aw[i]));
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(std::abs(Aw[i] - (2.5 * Au[i] - 0.75 * Av[i])) <= 1e-12 * scale);
  }
  // FFT path equals the dense matrix
  const std::vector<double> dense = op.to_dense().multiply(u);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(dense[i] - Au[i]) <= 1e-12 * scale);
}

TEST_CASE("iterative solver") {
  SUBCASE("identity and zero right-hand side") {
    LinearOperator id = [](std::span<const double> x, std::span<double> y) {
      std::copy(x.begin(), x.end(), y.begin());
    };
    const std::vector<double> b{1.0, -2.0, 3.0};
    const auto u = solve_iterative(id, b);
    CHECK(max_abs_diff(u, b) <= 1e-12);
    const auto z = solve_iterative(id, std::vector<double>(3, 0.0));
    for (double v : z) CHECK(v == 0.0);
  }
  SUBCASE("1D system against dense") {
    for (int J : {10, 20, 40}) {
      for (double alpha : {0.5, 1.5}) {
        ModelParams p;
        p.alpha = alpha;
        p.lambda = 0.01;
        const Operator1D op = assemble(p, Grid1D{J, 1.0});
        const std::vector<double> b(op.size(), -1.0);
        const auto dense = solve_dense({op.to_dense(), b});
        IterativeOptions opts;
        opts.tol = 1e-10;
        opts.jacobi_diagonal = op.diagonal();
        IterativeStats stats;
        const auto iter = solve_iterative(op.linear_operator(), b, opts, &stats);
        CHECK(stats.relative_residual <= 1e-10);
        CHECK(max_abs_diff(dense, iter) <= 1e-8 * norm_inf(dense));
      }
    }
  }
  SUBCASE("budget exhaustion raises") {
    ModelParams p;
    p.alpha = 1.5;
    const Operator1D op = assemble(p, Grid1D{40, 1.0});
    IterativeOptions opts;
    opts.tol = 1e-14;
    opts.restart = 2;
    opts.max_iterations = 3;
    CHECK_THROWS_AS(solve_iterative(op.linear_operator(), std::vector<double>(op.size(), -1.0), opts),
                    ConvergenceError);
  }
}

TEST_CASE("CSR product matches its dense form") {
  CsrMatrix A;
  A.rows = A.cols = 3;
  A.row_ptr = {0, 2, 3, 5};
  A.col_idx = {0, 2, 1, 0, 2};
  A.values = {1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> v{1.0, 1.0, 2.0};
  std::vector<double> out(3);
  A.apply(v, out);
  CHECK(max_abs_diff(out, A.to_dense().multiply(v)) == 0.0);
  const auto d = A.diagonal();
  CHECK(d[0] == 1.0);
  CHECK(d[1] == 3.0);
  CHECK(d[2] == 5.0);
  CHECK(A.row_nonzeros(0) == 2);
}
