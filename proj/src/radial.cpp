#include "ballspec/radial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ballspec::radial {

void require_valid(const RadialBasisId& b) {
  if (!b.valid()) {
    throw std::invalid_argument("radial basis requires alpha > -1 and ell >= 0, got alpha=" +
                                std::to_string(b.alpha) + " ell=" + std::to_string(b.ell));
  }
}

double norm_factor(int n, const RadialBasisId& basis) {
  require_valid(basis);
  const double a = basis.alpha;
  const double L = basis.ell;
  // sqrt(2(2n+a+L+3/2) * n! Gamma(n+a+L+3/2) / (Gamma(n+L+3/2) Gamma(n+a+1)))
  const double lg = std::lgamma(n + a + L + 1.5) + std::lgamma(n + 1.0) -
                    std::lgamma(n + L + 1.5) - std::lgamma(n + a + 1.0);
  return std::sqrt(2.0 * (2.0 * n + a + L + 1.5)) * std::exp(0.5 * lg);
}

namespace {
jacobi::JacobiParams zparams(const RadialBasisId& b) { return {b.alpha, b.ell + 0.5}; }
}  // namespace

double eval_Q(int n, const RadialBasisId& basis, double r) {
  require_valid(basis);
  if (r < 0.0 || r > 1.0) throw std::invalid_argument("radius outside [0,1]");
  const double z = 2.0 * r * r - 1.0;
  return norm_factor(n, basis) * std::pow(r, basis.ell) * jacobi::eval(n, zparams(basis), z);
}

Eigen::VectorXd eval_Q_all(int n, const RadialBasisId& basis, double r) {
  require_valid(basis);
  const double z = 2.0 * r * r - 1.0;
  const auto pvals = jacobi::eval_all(n - 1, zparams(basis), z);
  const double rl = std::pow(r, basis.ell);
  Eigen::VectorXd out(n);
  for (int k = 0; k < n; ++k) out(k) = norm_factor(k, basis) * rl * pvals[k];
  return out;
}

double eval_Q_deriv(int n, const RadialBasisId& basis, double r) {
  require_valid(basis);
  const double z = 2.0 * r * r - 1.0;
  const int ell = basis.ell;
  const auto pd = jacobi::eval_with_derivative(n, zparams(basis), z);
  const double rp = ell > 0 ? ell * std::pow(r, ell - 1) : 0.0;
  return norm_factor(n, basis) * (rp * pd.value + std::pow(r, ell + 1) * 4.0 * pd.derivative);
}

Eigen::RowVectorXd restriction_row(const RadialBasisId& basis, int N) {
  require_valid(basis);
  const double a = basis.alpha;
  const double L = basis.ell;
  Eigen::RowVectorXd row(N);
  for (int n = 0; n < N; ++n) {
    const double lg = jacobi::log_binom(n + a + L + 0.5, a) + jacobi::log_binom(n + a, a);
    row(n) = std::sqrt(2.0 * (2.0 * n + a + L + 1.5)) * std::exp(0.5 * lg);
  }
  return row;
}

double BandedOperator::coeff(int row, int col) const {
  const auto it = bands.find(col - row);
  if (it == bands.end()) return 0.0;
  const int lo = std::max(0, -(col - row));
  const int idx = row - lo;
  if (idx < 0 || idx >= static_cast<int>(it->second.size())) return 0.0;
  return it->second[idx];
}

void BandedOperator::set(int row, int col, double value) {
  if (row < 0 || row >= rows || col < 0 || col >= cols) {
    throw std::out_of_range("banded set outside shape");
  }
  const int offset = col - row;
  const int lo = std::max(0, -offset);
  const int hi = std::min(rows - 1, cols - 1 - offset);
  auto& vals = bands[offset];
  if (vals.empty()) vals.assign(static_cast<size_t>(hi - lo + 1), 0.0);
  vals[static_cast<size_t>(row - lo)] = value;
}

Eigen::MatrixXd BandedOperator::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  for (const auto& [offset, vals] : bands) {
    const int lo = std::max(0, -offset);
    for (int i = lo; i < lo + static_cast<int>(vals.size()); ++i) {
      m(i, i + offset) = vals[i - lo];
    }
  }
  return m;
}

BandedOperator BandedOperator::transposed() const {
  BandedOperator t;
  t.in_basis = out_basis;
  t.out_basis = in_basis;
  t.rows = cols;
  t.cols = rows;
  for (const auto& [offset, vals] : bands) {
    const int lo = std::max(0, -offset);
    for (int i = lo; i < lo + static_cast<int>(vals.size()); ++i) {
      t.set(i + offset, i, vals[i - lo]);
    }
  }
  return t;
}

BandedOperator BandedOperator::compose(const BandedOperator& other) const {
  if (cols != other.rows || !(in_basis == other.out_basis)) {
    throw std::invalid_argument("banded compose: basis/shape mismatch");
  }
  BandedOperator prod;
  prod.in_basis = other.in_basis;
  prod.out_basis = out_basis;
  prod.rows = rows;
  prod.cols = other.cols;
  for (const auto& [d1, v1] : bands) {
    const int lo1 = std::max(0, -d1);
    for (const auto& [d2, v2] : other.bands) {
      const int lo2 = std::max(0, -d2);
      for (int i = lo1; i < lo1 + static_cast<int>(v1.size()); ++i) {
        const int k = i + d1;
        const int kidx = k - lo2;
        if (kidx < 0 || kidx >= static_cast<int>(v2.size())) continue;
        const int j = k + d2;
        prod.set(i, j, prod.coeff(i, j) + v1[i - lo1] * v2[kidx]);
      }
    }
  }
  return prod;
}

double dplus_entry(const RadialBasisId& basis, int n) {
  return std::sqrt(2.0 * n * (2.0 * n + 2.0 * basis.alpha + 2.0 * basis.ell + 3.0));
}

double dminus_entry(const RadialBasisId& basis, int n) {
  return std::sqrt(2.0 * (n + basis.alpha + 1.0) * (2.0 * n + 2.0 * basis.ell + 1.0));
}

namespace {
double sgrid(const RadialBasisId& b, int n) { return 2.0 * n + b.alpha + b.ell + 1.5; }
}  // namespace

double conv_diag(const RadialBasisId& b, int n) {
  return std::sqrt((n + b.alpha + 1.0) * (n + b.alpha + b.ell + 1.5) /
                   (sgrid(b, n) * (sgrid(b, n) + 1.0)));
}

double conv_super(const RadialBasisId& b, int n) {
  return -std::sqrt((n + 1.0) * (n + b.ell + 1.5) /
                    ((sgrid(b, n) + 1.0) * (sgrid(b, n) + 2.0)));
}

double rmul_diag(const RadialBasisId& b, int n) {
  return std::sqrt((n + b.ell + 1.5) * (n + b.alpha + b.ell + 1.5) /
                   (sgrid(b, n) * (sgrid(b, n) + 1.0)));
}

double rmul_super(const RadialBasisId& b, int n) {
  return std::sqrt((n + 1.0) * (n + b.alpha + 1.0) /
                   ((sgrid(b, n) + 1.0) * (sgrid(b, n) + 2.0)));
}

BandedOperator build_Dplus(const RadialBasisId& basis, int N) {
  require_valid(basis);
  if (N < 1) throw std::invalid_argument("truncation must be >= 1");
  BandedOperator op;
  op.in_basis = basis;
  op.out_basis = {basis.alpha + 1.0, basis.ell + 1};
  op.rows = op.cols = N;
  for (int n = 1; n < N; ++n) op.set(n - 1, n, dplus_entry(basis, n));
  return op;
}

BandedOperator build_Dminus(const RadialBasisId& basis, int N) {
  require_valid(basis);
  if (basis.ell < 1) {
    throw std::invalid_argument("lowering at ell=0 has no Reg(-1) target");
  }
  if (N < 1) throw std::invalid_argument("truncation must be >= 1");
  BandedOperator op;
  op.in_basis = basis;
  op.out_basis = {basis.alpha + 1.0, basis.ell - 1};
  op.rows = op.cols = N;
  for (int n = 0; n < N; ++n) op.set(n, n, dminus_entry(basis, n));
  return op;
}

BandedOperator build_C(const RadialBasisId& basis, int N) {
  require_valid(basis);
  if (N < 1) throw std::invalid_argument("truncation must be >= 1");
  BandedOperator op;
  op.in_basis = basis;
  op.out_basis = {basis.alpha + 1.0, basis.ell};
  op.rows = op.cols = N;
  for (int n = 0; n < N; ++n) op.set(n, n, conv_diag(basis, n));
  for (int n = 1; n < N; ++n) op.set(n - 1, n, conv_super(basis, n - 1));
  return op;
}

BandedOperator build_R(const RadialBasisId& basis, int N) {
  require_valid(basis);
  if (N < 1) throw std::invalid_argument("truncation must be >= 1");
  BandedOperator op;
  op.in_basis = basis;
  op.out_basis = {basis.alpha, basis.ell + 1};
  op.rows = op.cols = N;
  for (int n = 0; n < N; ++n) op.set(n, n, rmul_diag(basis, n));
  for (int n = 1; n < N; ++n) op.set(n - 1, n, rmul_super(basis, n - 1));
  return op;
}

RadialQuadrature radial_quadrature(const RadialBasisId& basis, int K) {
  require_valid(basis);
  if (K < 1) throw std::invalid_argument("quadrature size must be >= 1");
  const auto rule = jacobi::gauss_jacobi(K, zparams(basis));
  RadialQuadrature q;
  q.alpha = basis.alpha;
  q.ell_rule = basis.ell;
  q.r.resize(K);
  q.w.resize(K);
  const double c = std::exp2(-(basis.alpha + 0.5)) / 4.0;
  for (int j = 0; j < K; ++j) {
    const double z = rule.nodes[j];
    q.r[j] = std::sqrt(0.5 * (1.0 + z));
    q.w[j] = c * rule.weights[j] / std::pow(1.0 + z, basis.ell);
  }
  return q;
}

namespace {

void check_transform_inputs(Eigen::Index n_samples, const RadialQuadrature& quad,
                            const RadialBasisId& basis, int N) {
  require_valid(basis);
  if (quad.alpha != basis.alpha) {
    throw std::invalid_argument("quadrature weight alpha does not match basis");
  }
  if (quad.ell_rule > basis.ell) {
    throw std::invalid_argument("quadrature rule regularity exceeds basis regularity");
  }
  if (n_samples != static_cast<Eigen::Index>(quad.r.size())) {
    throw std::invalid_argument("sample count does not match quadrature size");
  }
  const int K = static_cast<int>(quad.r.size());
  // integrand r^{2 ell} p(z) with deg p = 2(N-1): exact when
  // (ell - ell_rule) + 2(N-1) <= 2K-1
  if (basis.ell - quad.ell_rule + 2 * (N - 1) > 2 * K - 1) {
    throw std::invalid_argument("quadrature rule too small for requested truncation");
  }
}

Eigen::MatrixXd vandermonde(const RadialBasisId& basis, int N,
                            const std::vector<double>& r) {
  Eigen::MatrixXd V(static_cast<Eigen::Index>(r.size()), N);
  for (size_t j = 0; j < r.size(); ++j) V.row(static_cast<Eigen::Index>(j)) = eval_Q_all(N, basis, r[j]).transpose();
  return V;
}

}  // namespace

Eigen::VectorXd transform_forward(const Eigen::VectorXd& samples,
                                  const RadialQuadrature& quad,
                                  const RadialBasisId& basis, int N) {
  check_transform_inputs(samples.size(), quad, basis, N);
  const Eigen::MatrixXd V = vandermonde(basis, N, quad.r);
  const Eigen::VectorXd w =
      Eigen::Map<const Eigen::VectorXd>(quad.w.data(), static_cast<Eigen::Index>(quad.w.size()));
  return V.transpose() * w.cwiseProduct(samples);
}

Eigen::VectorXcd transform_forward(const Eigen::VectorXcd& samples,
                                   const RadialQuadrature& quad,
                                   const RadialBasisId& basis, int N) {
  check_transform_inputs(samples.size(), quad, basis, N);
  const Eigen::MatrixXd V = vandermonde(basis, N, quad.r);
  const Eigen::VectorXd w =
      Eigen::Map<const Eigen::VectorXd>(quad.w.data(), static_cast<Eigen::Index>(quad.w.size()));
  return V.transpose() * (w.array() * samples.array()).matrix();
}

Eigen::VectorXd transform_backward(const Eigen::VectorXd& coeffs,
                                   const RadialBasisId& basis,
                                   const std::vector<double>& r) {
  return vandermonde(basis, static_cast<int>(coeffs.size()), r) * coeffs;
}

Eigen::VectorXcd transform_backward(const Eigen::VectorXcd& coeffs,
                                    const RadialBasisId& basis,
                                    const std::vector<double>& r) {
  return vandermonde(basis, static_cast<int>(coeffs.size()), r) * coeffs;
}

}  // namespace ballspec::radial
