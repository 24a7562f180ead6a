#include "levymet/solver2d_hv.hpp"

#include "levymet/errors.hpp"

namespace levymet {

double Solution2DHV::at(int i, int j) const {
  if (i <= -grid.J || i >= grid.J || j <= -grid.J || j >= grid.J) return 0.0;
  return values[grid.index(i, j)];
}

linalg::CsrMatrix assemble_hv(const ModelParams& params, const Grid2D& grid, Scheme scheme) {
  if (grid.J < 4) throw InvalidParams("assemble_hv: resolution J must be at least 4");
  const linalg::DenseMatrix K = assemble(params, Grid1D{grid.J, grid.half_width}, scheme).to_dense();
  const int m = grid.side();
  const std::size_t n = grid.unknowns();

  linalg::CsrMatrix A;
  A.rows = A.cols = n;
  A.row_ptr.reserve(n + 1);
  A.row_ptr.push_back(0);
  const std::size_t per_row = 2 * static_cast<std::size_t>(m) - 1;
  A.col_idx.reserve(n * per_row);
  A.values.reserve(n * per_row);
  // row (a, b) of K (x) I + I (x) K: K[a][c] at (c, b) for all c, K[b][c] at (a, c) for all c
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int c = 0; c < m; ++c) {
        if (c == a) continue;
        A.col_idx.push_back(static_cast<std::size_t>(c) * m + b);
        A.values.push_back(K(a, c));
      }
      for (int c = 0; c < m; ++c) {
        A.col_idx.push_back(static_cast<std::size_t>(a) * m + c);
        A.values.push_back(c == b ? K(a, a) + K(b, b) : K(b, c));
      }
      A.row_ptr.push_back(A.col_idx.size());
    }
  }
  return A;
}

Solution2DHV solve_hv(const ModelParams& params, int J, LinearSolver solver, Scheme scheme) {
  const Grid2D grid{J, params.half_width};
  const linalg::CsrMatrix A = assemble_hv(params, grid, scheme);
  const std::vector<double> rhs(A.rows, -1.0);
  Solution2DHV sol{grid, {}, params, {}};
  if (solver == LinearSolver::dense) {
    sol.values = linalg::solve_dense({A.to_dense(), rhs});
    return sol;
  }
  linalg::IterativeOptions opts;
  opts.tol = 1e-11;
  opts.jacobi_diagonal = A.diagonal();
  auto apply = [&A](std::span<const double> v, std::span<double> out) { A.apply(v, out); };
  sol.values = linalg::solve_iterative(apply, rhs, opts, &sol.stats);
  return sol;
}

}  // namespace levymet
