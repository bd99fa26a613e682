#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace ballspec::angular {

/// Index triple of a spin-weighted harmonic. Valid when ell >= max(|m|,|s|).
struct SWHIndex {
  int ell;
  int m;
  int s;
  bool valid() const;
};

/// Smallest degree carrying the (m,s) family.
int ell_min(int m, int s);

/// Value of the spin-weighted harmonic, normalized to unit L2 norm over the
/// full sphere (the conventional theta-normalization divided by sqrt(2 pi)).
/// Sign convention: (-1)^{max(m,-s)}.
std::complex<double> eval_Ys(const SWHIndex& idx, double theta, double phi);

/// Theta-dependent factor alone (the phi factor e^{i m phi} stripped); real.
double eval_Ys_theta(const SWHIndex& idx, double theta);

/// Covariant-derivative wavenumber: -mu sqrt((ell - mu s)(ell + mu s + 1)/2).
/// Returns 0 when the shifted harmonic does not exist (negative argument).
double k_wavenumber(int mu, int ell, int s);

/// Tridiagonal multiplication operator between spin-weighted families at
/// fixed m. Rows cover ell in [row_lmin, lmax] of the out_spin family,
/// columns ell in [col_lmin, lmax] of the in_spin family.
struct AngularOperator {
  int in_spin = 0;
  int out_spin = 0;
  int m = 0;
  int lmax = 0;
  int row_lmin = 0;
  int col_lmin = 0;
  Eigen::MatrixXd mat;
};

/// cos(theta) as an operator on the (s,m) family; symmetric tridiagonal.
AngularOperator build_cos_op(int s, int m, int Lmax);
/// sin(theta) as an operator from spin s to spin s + direction.
AngularOperator build_sin_op(int s, int m, int Lmax, int direction);

/// Recurrence coefficients (exposed for direct checks). The m=0 entries with
/// an m/(l(l+1)) prefactor are taken as 0 before the l=0 limit.
double cos_diag_coeff(int ell, int m, int s);           // alpha_l
double cos_offdiag_coeff(int ell, int m, int s);        // beta_l
double sin_diag_coeff(int ell, int s, int m);           // rho_{l,s}
double sin_offdiag_coeff(int ell, int s, int m);        // kappa_{l,s}

/// Gauss-Legendre grid in x = cos(theta): theta values and weights for
/// integration against sin(theta) d(theta).
struct ThetaGrid {
  std::vector<double> theta;
  std::vector<double> weight;
};
ThetaGrid gauss_legendre_theta(int K);

/// Per-(m,s) transforms between theta samples and degree coefficients
/// (ell = ell_min..Lmax). Forward . backward is the identity on band-limited
/// data when the grid has >= Lmax+1 points; smaller grids are rejected.
Eigen::VectorXcd swsh_forward(int m, int s, const Eigen::VectorXcd& samples,
                              const ThetaGrid& grid, int Lmax);
Eigen::VectorXcd swsh_backward(int m, int s, const Eigen::VectorXcd& coeffs,
                               const ThetaGrid& grid, int Lmax);

}  // namespace ballspec::angular
