#pragma once

// Mean exit time from (-L, L) for dX = f(X) dt + dL_t with L_t a symmetric
// tempered stable process (plus optional Brownian part). The nonlocal term is
// discretized with a punched-hole trapezoid rule whose zeta correction is
// folded into the second-difference coefficient C_h, so the assembled matrix
// is Toeplitz (jumps) + diagonal (row sums, tails) + tridiagonal (local).
//
// The principal-value compensator int y u'(x) nu(dy) vanishes exactly, but
// its trapezoid image does not once one side of the stencil is cut short by
// the boundary: the end-cell error is O(h^(1-alpha)) in the rows next to
// +-L. Scheme::corrected adds the exact-minus-discrete first moment
// as a central-difference term so the discrete compensator vanishes too.
//
// The drift term is differenced centrally in the printed scheme. For
// alpha < 1 the drift outgrows the near-neighbour jump coupling (f/2h vs
// h^(-alpha)), the off-diagonals turn negative and the solution oscillates
// node to node. Scheme::corrected switches a row to upwind differencing
// exactly when the central stencil would lose non-negative off-diagonals.
// Scheme::literal keeps the printed central drift and omits the moment term.

#include <span>
#include <vector>

#include "levymet/convergence.hpp"
#include "levymet/kernel.hpp"
#include "levymet/linalg.hpp"

namespace levymet {

/// Uniform grid x_j = j h on [-2L, 2L], h = L / J. Unknowns are the interior
/// nodes j = -J+1 .. J-1; nodes with |x_j| >= L are exterior (u = 0).
struct Grid1D {
  int J = 0;
  double half_width = 1.0;

  double h() const { return half_width / J; }
  double node(int j) const { return j * h(); }
  int interior_count() const { return 2 * J - 1; }
  /// Storage index of interior node j.
  int index(int j) const { return j + J - 1; }
  int node_at(int index) const { return index - J + 1; }
};

enum class Scheme { corrected, literal };

struct Operator1D {
  Grid1D grid;
  double c_h = 0.0;                    ///< d/2 - intensity C_alpha zeta(alpha-1) h^(2-alpha)
  linalg::ToeplitzSym toeplitz;        ///< jump couplings C~ e^(-lambda|x_k|)|x_k|^(-1-alpha)
  std::vector<double> diag_correction; ///< a_l: minus the row sums of the jump weights
  std::vector<double> tail_diag;       ///< -intensity C_alpha (W1 + W2)(x_j)
  std::vector<double> drift;           ///< f(x_j)
  /// Coefficient of the first difference restoring the odd first moment;
  /// all zeros for Scheme::literal.
  std::vector<double> moment_correction;
  /// Local tridiagonal part (second difference, drift, moment term) by row;
  /// lower[0] and upper[n-1] multiply exterior zeros.
  std::vector<double> local_lower, local_diag, local_upper;

  std::size_t size() const { return toeplitz.size(); }
  linalg::DenseMatrix to_dense() const;
  std::vector<double> diagonal() const;
  /// Matrix-free product through the FFT Toeplitz path; the returned
  /// operator owns its FFT plans and may be called repeatedly.
  linalg::LinearOperator linear_operator() const;
};

struct Solution1D {
  Grid1D grid;
  std::vector<double> values;  ///< U at interior nodes, ordered j = -J+1 .. J-1
  ModelParams params;

  /// U at grid node j (zero for |j| >= J).
  double at_node(int j) const;
  std::vector<double> nodes() const;
};

enum class LinearSolver { dense, iterative };

/// Throws InvalidParams for bad params or J < 4.
Operator1D assemble(const ModelParams& params, const Grid1D& grid,
                    Scheme scheme = Scheme::corrected);

/// Solves the assembled system with right-hand side -1.
Solution1D solve_met(const ModelParams& params, int J, LinearSolver solver = LinearSolver::dense,
                     Scheme scheme = Scheme::corrected);

/// Solves the assembled system against an arbitrary interior right-hand side.
std::vector<double> solve_operator(const Operator1D& op, std::span<const double> rhs,
                                   LinearSolver solver = LinearSolver::dense);

/// Generator applied to u(x) = (1 - x^2)_+ at |x| < 1 (requires L = 1):
/// drift and diffusion parts plus the exact nonlocal part in closed form.
double manufactured_rhs(double x, const ModelParams& params);

/// Solves A U = manufactured_rhs at the nodes for each J and reports the
/// sqrt(h)-scaled discrete 2-norm error against 1 - x^2.
ConvergenceReport verify_convergence(const ModelParams& params, std::span<const int> resolutions,
                                     LinearSolver solver = LinearSolver::dense,
                                     Scheme scheme = Scheme::corrected);

}  // namespace levymet
