#include "ballspec/angular.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ballspec/jacobi.hpp"

namespace ballspec::angular {

bool SWHIndex::valid() const { return ell >= ell_min(m, s); }

int ell_min(int m, int s) { return std::max(std::abs(m), std::abs(s)); }

double eval_Ys_theta(const SWHIndex& idx, double theta) {
  if (!idx.valid()) throw std::invalid_argument("harmonic index needs ell >= max(|m|,|s|)");
  if (theta < 0.0 || theta > std::numbers::pi) {
    throw std::invalid_argument("theta outside [0,pi]");
  }
  const int l0 = ell_min(idx.m, idx.s);
  const int l1 = std::min(std::abs(idx.m), std::abs(idx.s));
  const int a = std::abs(idx.m + idx.s);
  const int b = std::abs(idx.m - idx.s);
  const int n = idx.ell - l0;
  const double sign = (std::max(idx.m, -idx.s) % 2 == 0) ? 1.0 : -1.0;
  const double lg = std::lgamma(idx.ell + l0 + 1.0) + std::lgamma(idx.ell - l0 + 1.0) -
                    std::lgamma(idx.ell + l1 + 1.0) - std::lgamma(idx.ell - l1 + 1.0);
  const double norm =
      sign * std::sqrt((2.0 * idx.ell + 1.0) / (4.0 * std::numbers::pi)) * std::exp(0.5 * lg);
  const double sh = std::sin(0.5 * theta);
  const double ch = std::cos(0.5 * theta);
  return norm * std::pow(sh, a) * std::pow(ch, b) *
         jacobi::eval(n, {static_cast<double>(a), static_cast<double>(b)}, std::cos(theta));
}

std::complex<double> eval_Ys(const SWHIndex& idx, double theta, double phi) {
  return eval_Ys_theta(idx, theta) *
         std::exp(std::complex<double>(0.0, idx.m * phi));
}

double k_wavenumber(int mu, int ell, int s) {
  if (mu == 0) return 0.0;
  const double arg = (ell - static_cast<double>(mu) * s) * (ell + static_cast<double>(mu) * s + 1.0);
  if (arg <= 0.0) return 0.0;
  return -mu * std::sqrt(0.5 * arg);
}

double cos_diag_coeff(int ell, int m, int s) {
  if (m == 0 || s == 0) return 0.0;
  return -static_cast<double>(m) * s / (static_cast<double>(ell) * (ell + 1.0));
}

double cos_offdiag_coeff(int ell, int m, int s) {
  const double num = (static_cast<double>(ell) - m) * (static_cast<double>(ell) + m) *
                     (static_cast<double>(ell) - s) * (static_cast<double>(ell) + s);
  if (num <= 0.0) return 0.0;
  return std::sqrt(num / ((2.0 * ell - 1.0) * (2.0 * ell + 1.0))) / ell;
}

double sin_diag_coeff(int ell, int s, int m) {
  if (m == 0) return 0.0;
  const double num = (static_cast<double>(ell) - s) * (static_cast<double>(ell) + s + 1.0);
  if (num <= 0.0) return 0.0;
  return m * std::sqrt(num) / (static_cast<double>(ell) * (ell + 1.0));
}

double sin_offdiag_coeff(int ell, int s, int m) {
  const double num = (static_cast<double>(ell) - m) * (static_cast<double>(ell) + m) *
                     (static_cast<double>(ell) - s - 1.0) * (static_cast<double>(ell) - s);
  if (num <= 0.0) return 0.0;
  return std::sqrt(num / ((2.0 * ell - 1.0) * (2.0 * ell + 1.0))) / ell;
}

AngularOperator build_cos_op(int s, int m, int Lmax) {
  const int l0 = ell_min(m, s);
  if (Lmax < l0) throw std::invalid_argument("Lmax below the first degree of the family");
  AngularOperator op;
  op.in_spin = op.out_spin = s;
  op.m = m;
  op.lmax = Lmax;
  op.row_lmin = op.col_lmin = l0;
  const int n = Lmax - l0 + 1;
  op.mat = Eigen::MatrixXd::Zero(n, n);
  for (int ell = l0; ell <= Lmax; ++ell) {
    const int c = ell - l0;
    op.mat(c, c) = cos_diag_coeff(ell, m, s);
    if (ell - 1 >= l0) op.mat(c - 1, c) = cos_offdiag_coeff(ell, m, s);
    if (ell + 1 <= Lmax) op.mat(c + 1, c) = cos_offdiag_coeff(ell + 1, m, s);
  }
  return op;
}

AngularOperator build_sin_op(int s, int m, int Lmax, int direction) {
  if (direction != 1 && direction != -1) {
    throw std::invalid_argument("sin operator direction must be +1 or -1");
  }
  const int l0_in = ell_min(m, s);
  const int s_out = s + direction;
  const int l0_out = ell_min(m, s_out);
  if (Lmax < l0_in || Lmax < l0_out) {
    throw std::invalid_argument("Lmax below the first degree of the family");
  }
  AngularOperator op;
  op.in_spin = s;
  op.out_spin = s_out;
  op.m = m;
  op.lmax = Lmax;
  op.row_lmin = l0_out;
  op.col_lmin = l0_in;
  op.mat = Eigen::MatrixXd::Zero(Lmax - l0_out + 1, Lmax - l0_in + 1);
  auto put = [&](int lr, int lc, double v) {
    if (lr >= l0_out && lr <= Lmax) op.mat(lr - l0_out, lc - l0_in) = v;
  };
  for (int ell = l0_in; ell <= Lmax; ++ell) {
    if (direction == 1) {
      put(ell + 1, ell, sin_offdiag_coeff(ell + 1, -s - 1, m));
      put(ell, ell, sin_diag_coeff(ell, s, m));
      put(ell - 1, ell, -sin_offdiag_coeff(ell, s, m));
    } else {
      put(ell + 1, ell, -sin_offdiag_coeff(ell + 1, s - 1, m));
      put(ell, ell, sin_diag_coeff(ell, s - 1, m));
      put(ell - 1, ell, sin_offdiag_coeff(ell, -s, m));
    }
  }
  return op;
}

ThetaGrid gauss_legendre_theta(int K) {
  const auto rule = jacobi::gauss_jacobi(K, {0.0, 0.0});
  ThetaGrid g;
  g.theta.resize(K);
  g.weight.resize(K);
  // descending theta as x = cos(theta) ascends; keep theta ascending instead
  for (int j = 0; j < K; ++j) {
    g.theta[j] = std::acos(rule.nodes[K - 1 - j]);
    g.weight[j] = rule.weights[K - 1 - j];
  }
  return g;
}

namespace {

Eigen::MatrixXd theta_basis(int m, int s, const ThetaGrid& grid, int Lmax) {
  const int l0 = ell_min(m, s);
  Eigen::MatrixXd Y(static_cast<Eigen::Index>(grid.theta.size()), Lmax - l0 + 1);
  for (size_t j = 0; j < grid.theta.size(); ++j) {
    for (int ell = l0; ell <= Lmax; ++ell) {
      Y(static_cast<Eigen::Index>(j), ell - l0) = eval_Ys_theta({ell, m, s}, grid.theta[j]);
    }
  }
  return Y;
}

}  // namespace

Eigen::VectorXcd swsh_forward(int m, int s, const Eigen::VectorXcd& samples,
                              const ThetaGrid& grid, int Lmax) {
  if (static_cast<int>(grid.theta.size()) < Lmax + 1) {
    throw std::invalid_argument("theta grid too small for requested Lmax");
  }
  if (samples.size() != static_cast<Eigen::Index>(grid.theta.size())) {
    throw std::invalid_argument("sample count does not match grid");
  }
  const Eigen::MatrixXd Y = theta_basis(m, s, grid, Lmax);
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(
      grid.weight.data(), static_cast<Eigen::Index>(grid.weight.size()));
  return 2.0 * std::numbers::pi * (Y.transpose() * (w.array() * samples.array()).matrix());
}

Eigen::VectorXcd swsh_backward(int m, int s, const Eigen::VectorXcd& coeffs,
                               const ThetaGrid& grid, int Lmax) {
  const int l0 = ell_min(m, s);
  if (coeffs.size() != static_cast<Eigen::Index>(Lmax - l0 + 1)) {
    throw std::invalid_argument("coefficient count does not match [ell_min, Lmax]");
  }
  return theta_basis(m, s, grid, Lmax) * coeffs;
}

}  // namespace ballspec::angular
