#pragma once

// Mean exit time on the square (-L, L)^2 when the two noise components jump
// independently along the axes. The generator splits into one 1D operator per
// axis, so the assembled matrix is K (x) I + I (x) K with K the 1D operator;
// every row couples only to its own grid row and column.

#include <vector>

#include "levymet/kernel.hpp"
#include "levymet/linalg.hpp"
#include "levymet/solver1d.hpp"

namespace levymet {

/// Tensor grid with spacing h = L / J; unknowns (i, j) in {-J+1 .. J-1}^2.
struct Grid2D {
  int J = 0;
  double half_width = 1.0;

  double h() const { return half_width / J; }
  int side() const { return 2 * J - 1; }
  std::size_t unknowns() const { return static_cast<std::size_t>(side()) * side(); }
  /// Storage index of node (i, j); i runs along x1 and is the slow index.
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i + J - 1) * side() + (j + J - 1);
  }
};

struct Solution2DHV {
  Grid2D grid;
  std::vector<double> values;  ///< row-major in (i, j), see Grid2D::index
  ModelParams params;
  linalg::IterativeStats stats;  ///< zero iterations when solved densely

  /// U at node (i, j); zero outside the open square.
  double at(int i, int j) const;
};

/// Drift acts componentwise: f = (f(x1), f(x2)).
/// Throws InvalidParams for bad params or J < 4.
linalg::CsrMatrix assemble_hv(const ModelParams& params, const Grid2D& grid,
                              Scheme scheme = Scheme::corrected);

/// Solves with right-hand side -1. `dense` factorizes the full matrix and is
/// only sensible for small J; `iterative` runs Jacobi-preconditioned GMRES.
Solution2DHV solve_hv(const ModelParams& params, int J,
                      LinearSolver solver = LinearSolver::iterative,
                      Scheme scheme = Scheme::corrected);

}  // namespace levymet
