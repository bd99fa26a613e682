#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "ballspec/jacobi.hpp"

namespace ballspec::radial {

/// Label of one weighted radial family on [0,1]: weight exponent alpha > -1
/// and regularity degree ell >= 0. The family spans Reg(ell) under the
/// measure (1-r^2)^alpha r^2 dr.
struct RadialBasisId {
  double alpha;
  int ell;
  bool valid() const { return alpha > -1.0 && ell >= 0; }
  bool operator==(const RadialBasisId& o) const {
    return alpha == o.alpha && ell == o.ell;
  }
};
void require_valid(const RadialBasisId& b);

/// Orthonormality prefactor of the basis element of degree n.
double norm_factor(int n, const RadialBasisId& basis);

/// Q_n(r) = norm * r^ell * P_n^{(alpha, ell+1/2)}(2r^2-1).
double eval_Q(int n, const RadialBasisId& basis, double r);

/// All degrees 0..n-1 at one point (column of the Vandermonde).
Eigen::VectorXd eval_Q_all(int n, const RadialBasisId& basis, double r);

/// d/dr of the basis element (exact, via the z-derivative of the Jacobi part).
double eval_Q_deriv(int n, const RadialBasisId& basis, double r);

/// Boundary values Q_n(1), n = 0..N-1, by the closed form (log-gamma route,
/// independent of the recurrence evaluation).
Eigen::RowVectorXd restriction_row(const RadialBasisId& basis, int N);

/// A sparse operator together with the basis labels of its input and output
/// coefficient spaces. Bands are keyed by diagonal offset (col - row); the
/// value at (row, row+offset) is bands[offset][row].
struct BandedOperator {
  RadialBasisId in_basis;
  RadialBasisId out_basis;
  int rows = 0;
  int cols = 0;
  std::map<int, std::vector<double>> bands;

  double coeff(int row, int col) const;
  void set(int row, int col, double value);
  int band_count() const { return static_cast<int>(bands.size()); }
  Eigen::MatrixXd dense() const;

  template <typename Vec>
  Vec apply(const Vec& x) const {
    if (x.size() != cols) throw std::invalid_argument("banded apply: size mismatch");
    Vec y = Vec::Zero(rows);
    for (const auto& [offset, vals] : bands) {
      const int lo = std::max(0, -offset);
      for (int i = lo; i < lo + static_cast<int>(vals.size()); ++i) {
        const int j = i + offset;
        if (j >= 0 && j < cols) y(i) += vals[i - lo] * x(j);
      }
    }
    return y;
  }

  /// Transpose with swapped basis labels (adjoint action of the same
  /// physical operation, e.g. Ct multiplies by (1-r^2)).
  BandedOperator transposed() const;

  /// Banded product this*other (requires other.out_basis == this->in_basis).
  BandedOperator compose(const BandedOperator& other) const;
};

/// Entry formulas from the sparse-operator table. Names follow the roles:
/// conversion (alpha-raise) diagonal/superdiagonal and r-multiplication
/// diagonal/superdiagonal.
double dplus_entry(const RadialBasisId& basis, int n);   // couples n -> n-1
double dminus_entry(const RadialBasisId& basis, int n);  // diagonal
double conv_diag(const RadialBasisId& basis, int n);
double conv_super(const RadialBasisId& basis, int n);
double rmul_diag(const RadialBasisId& basis, int n);
double rmul_super(const RadialBasisId& basis, int n);

/// D+ = d/dr - ell/r : (alpha,ell) -> (alpha+1, ell+1); one superdiagonal.
BandedOperator build_Dplus(const RadialBasisId& basis, int N);
/// D- = d/dr + (ell+1)/r : (alpha,ell) -> (alpha+1, ell-1); diagonal.
/// Rejects ell = 0 (no Reg(-1) target).
BandedOperator build_Dminus(const RadialBasisId& basis, int N);
/// Identity map into the alpha+1 family; two bands.
BandedOperator build_C(const RadialBasisId& basis, int N);
/// Multiplication by r into (alpha, ell+1); two bands.
BandedOperator build_R(const RadialBasisId& basis, int N);

/// Quadrature for the measure (1-r^2)^alpha r^2 dr on [0,1], built from the
/// Gauss-Jacobi rule with weight (1-z)^alpha (1+z)^{ell_rule+1/2} in
/// z = 2r^2-1. Sum_j w_j h(r_j) is exact for h(r) = r^{2L} p(z) whenever
/// L >= ell_rule and (L - ell_rule) + deg p <= 2K-1.
struct RadialQuadrature {
  std::vector<double> r;
  std::vector<double> w;
  double alpha = 0.0;
  int ell_rule = 0;
};
RadialQuadrature radial_quadrature(const RadialBasisId& basis, int K);

/// Projection onto the first N basis elements from samples at the quadrature
/// nodes. Exact (machine precision) for band-limited input; throws if the
/// rule is too small or mismatched.
Eigen::VectorXd transform_forward(const Eigen::VectorXd& samples,
                                  const RadialQuadrature& quad,
                                  const RadialBasisId& basis, int N);
Eigen::VectorXcd transform_forward(const Eigen::VectorXcd& samples,
                                   const RadialQuadrature& quad,
                                   const RadialBasisId& basis, int N);

/// Evaluation of a coefficient vector at the given radii.
Eigen::VectorXd transform_backward(const Eigen::VectorXd& coeffs,
                                   const RadialBasisId& basis,
                                   const std::vector<double>& r);
Eigen::VectorXcd transform_backward(const Eigen::VectorXcd& coeffs,
                                    const RadialBasisId& basis,
                                    const std::vector<double>& r);

}  // namespace ballspec::radial
