#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "ballspec/radial.hpp"
#include "ballspec/regularity.hpp"

namespace ballspec::tensor {

/// Address of one stored component: spherical-harmonic degree/order and the
/// flat regularity multi-index.
struct ComponentKey {
  int ell;
  int m;
  int a_flat;
  bool operator<(const ComponentKey& o) const {
    if (ell != o.ell) return ell < o.ell;
    if (m != o.m) return m < o.m;
    return a_flat < o.a_flat;
  }
  bool operator==(const ComponentKey& o) const {
    return ell == o.ell && m == o.m && a_flat == o.a_flat;
  }
};

/// Spectral state of a tensor field: complex radial coefficient vectors per
/// (ell, m, regularity multi-index), all sharing one weight exponent alpha.
/// Absent keys are zero; keys at masked-invalid (ell, a) combinations are
/// never stored.
struct TensorFieldSpec {
  int rank = 0;
  double alpha = 0.0;
  int N = 0;
  std::map<ComponentKey, Eigen::VectorXcd> entries;

  /// Basis label of a stored component: (alpha, ell + abar).
  radial::RadialBasisId basis_of(const ComponentKey& key) const;
  /// Whether (ell, a) exists at this rank (low-ell masking).
  static bool component_exists(int ell, int rank, int a_flat);
  double max_abs() const;
};

TensorFieldSpec gradient(const TensorFieldSpec& t);
TensorFieldSpec divergence(const TensorFieldSpec& t);
TensorFieldSpec curl(const TensorFieldSpec& v);

enum class FactorOrder { MinusPlus, PlusMinus };
TensorFieldSpec laplacian(const TensorFieldSpec& t,
                          FactorOrder order = FactorOrder::MinusPlus);

/// Pointwise difference of two specs over the union of keys.
double max_difference(const TensorFieldSpec& a, const TensorFieldSpec& b);

/// The symmetric angular coupling matrix of the tensor Laplacian at fixed
/// ell, acting on spin components: the Laplacian reads
/// (1/r^2) d/dr(r^2 d/dr) - Lambda/r^2. Assembled from the first-order
/// spin-space gradient/divergence matrices below.
struct LambdaMatrix {
  int rank = 0;
  int ell = 0;
  Eigen::MatrixXd matrix;
};
LambdaMatrix build_lambda(int rank, int ell);

/// First-order spin-space operator pieces at fixed ell:
///   (grad T)^{mu tau} = delta_{mu,0} dT/dr + (1/r) (Gm T)^{mu tau}
///   (div A)^{tau}     = d(A^{0 tau})/dr  + (1/r) (Dm A)^{tau}
struct SpinGradOps {
  Eigen::MatrixXd gr;  // 3^{r+1} x 3^r, the d/dr selector
  Eigen::MatrixXd gm;  // 3^{r+1} x 3^r, the 1/r part
};
struct SpinDivOps {
  Eigen::MatrixXd dr;  // 3^r x 3^{r+1}
  Eigen::MatrixXd dm;  // 3^r x 3^{r+1}
};
SpinGradOps spin_gradient_ops(int rank, int ell);
SpinDivOps spin_divergence_ops(int rank, int ell);

/// (rough, restricted) sphere Laplacian eigenvalues for the component
/// sigma at degree ell: -l(l+1)+sbar^2 and -(l(l+1)-sbar^2+rank). The rough
/// value is cross-assembled from k-wavenumber products; disagreement throws.
std::pair<double, double> sphere_laplacian_check(const reg::MultiIndex& sigma, int ell);

/// Dense rank-1 operator matrices on stacked regularity components
/// (blocks ordered a = -1, 0, +1, each N radial coefficients; blocks of
/// components that do not exist at this ell are zero). Input basis labels
/// (alpha, ell+a); outputs are one conversion level up (two for the
/// Laplacian).
Eigen::MatrixXcd gradient_matrix(double alpha, int ell, int N);    // 3N x N
Eigen::MatrixXcd divergence_matrix(double alpha, int ell, int N);  // N x 3N
Eigen::MatrixXcd curl_matrix(double alpha, int ell, int N);        // 3N x 3N
Eigen::MatrixXcd laplacian_matrix(double alpha, int ell, int N);   // 3N x 3N

/// Physical-grid state: per azimuthal order m, one (n_theta x n_r) complex
/// matrix for each of the 3^rank coordinate components.
struct GridSpec {
  int rank = 0;
  double alpha = 0.0;
  int Lmax = 0;
  int N = 0;
  int n_theta = 0;
  int n_r = 0;
};
GridSpec make_grid_spec(int rank, double alpha, int Lmax, int N);

struct TensorGrid {
  GridSpec spec;
  // values[m + Lmax][component](theta index, r index)
  std::vector<std::vector<Eigen::MatrixXcd>> values;
};

/// Full projection chain: coordinate components -> spin components ->
/// per-(m, spin-weight) harmonic coefficients -> regularity rotation ->
/// radial coefficients. synthesize_tensor is the exact inverse on
/// band-limited data.
TensorFieldSpec project_tensor(const TensorGrid& grid);
TensorGrid synthesize_tensor(const TensorFieldSpec& spec, const GridSpec& gspec);

/// Spin components of the m-th azimuthal mode at a single point (phi = 0).
Eigen::VectorXcd eval_spin_components(const TensorFieldSpec& spec, int m,
                                      double theta, double r);

}  // namespace ballspec::tensor
