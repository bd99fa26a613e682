#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ballspec/radial.hpp"

namespace ballspec::solver {

/// Closure choices for the tau correction column. Column sparsity: 1
/// (last_row_drop), 3 (convert_column), 4 (jones_worland, alpha = -1/2 only).
enum class TauVariant { last_row_drop, convert_column, jones_worland };
std::string to_string(TauVariant v);

/// Generalized eigenproblem pencil: A x = -kappa^2 B x.
struct Pencil {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
};

/// Tau-closed Laplacian eigenvalue system for the Dirichlet ball problem:
/// block layout [[L + kappa^2 M, Pi], [boundary row, 0]], unknowns (F, tau).
struct AssembledSystem {
  Pencil pencil;                    // (N+1) x (N+1)
  Eigen::MatrixXd op_block;         // L, N x N (strictly upper, one band)
  Eigen::MatrixXd mass_block;       // M, N x N (three bands)
  Eigen::VectorXd tau_column;       // Pi, N
  Eigen::RowVectorXd boundary_row;  // restriction at r = 1, N
  double alpha = 0.0;
  int ell = 0;
  int N = 0;
  TauVariant variant = TauVariant::last_row_drop;
};
AssembledSystem assemble_bessel_tau(double alpha, int ell, int N, TauVariant variant);

/// Equivalent closure by dropping the last operator row and appending the
/// boundary row (no tau unknown); reference for the last_row_drop variant.
Pencil assemble_bessel_rowdrop(double alpha, int ell, int N);

/// Galerkin recombination: trial functions (1-r^2) Q_k^{alpha+1,ell} via the
/// transposed conversion, no boundary row. Size (N-1) x (N-1).
Pencil assemble_bessel_galerkin(double alpha, int ell, int N);
/// The recombined trial coefficients as columns (N x (N-1)); every column
/// evaluates to zero at r = 1.
Eigen::MatrixXd galerkin_trial_columns(double alpha, int ell, int N);

/// Chebyshev reference scheme: f = r^gamma sum T_n(2r^2-1) F_n with
/// gamma = ell mod 2, operator assembled through first/second-kind relations,
/// dense boundary row replacing the last equation.
Pencil assemble_bessel_chebyshev(int ell, int N);
/// The banded operator part before the boundary row (for structure checks).
Eigen::MatrixXd chebyshev_operator_block(int ell, int N);

/// The `count` smallest positive kappa = sqrt(-lambda) over the real finite
/// eigenvalues of the pencil. Throws on solver failure; spurious complex or
/// positive-lambda modes are filtered (imaginary parts above 1e-10 relative
/// are rejected). `equilibrate` applies a symmetric two-sided diagonal
/// scaling (off by default; eigenvalues are unchanged up to rounding).
std::vector<double> solve_smallest_kappa(const Pencil& pencil, int count,
                                         bool equilibrate = false);

/// First Dirichlet eigen-wavenumber reference: tabulated for ell in {2, 64},
/// otherwise a converged high-resolution solve (alpha = 0, convert_column)
/// at the given truncation.
double reference_kappa(int ell, int n_ref);

struct SweepRow {
  std::string method;
  double alpha;
  int ell;
  int N;
  std::string tau_variant;
  double kappa_est;
  double kappa_ref;
  double rel_error;
  double wall_time_ms;
};

/// method names: tau_alpha0, jones_worland, chebyshev, galerkin
std::vector<SweepRow> error_sweep(const std::vector<std::string>& methods,
                                  const std::vector<int>& ells,
                                  const std::vector<int>& Ns, int jobs = 1);

}  // namespace ballspec::solver
