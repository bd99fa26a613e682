#include "ballspec/verify.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ballspec/angular.hpp"
#include "ballspec/jacobi.hpp"
#include "ballspec/radial.hpp"
#include "ballspec/regularity.hpp"
#include "ballspec/solver.hpp"
#include "ballspec/tensor.hpp"

namespace ballspec::verify {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

double rel_diff(double a, double b) {
  return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

// ---------------------------------------------------------------- jacobi

double jacobi_orthogonality() {
  std::mt19937 rng(7101);
  std::uniform_real_distribution<double> par(-0.9, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    const jacobi::JacobiParams p{par(rng), par(rng)};
    const auto rule = jacobi::gauss_jacobi(24, p);
    std::vector<std::vector<double>> vals(rule.nodes.size());
    for (size_t j = 0; j < rule.nodes.size(); ++j) {
      vals[j] = jacobi::eval_all(20, p, rule.nodes[j]);
    }
    for (int n = 0; n <= 20; ++n) {
      for (int m = 0; m < n; ++m) {
        double dot = 0.0, nn = 0.0, mm = 0.0;
        for (size_t j = 0; j < rule.nodes.size(); ++j) {
          dot += rule.weights[j] * vals[j][static_cast<size_t>(n)] * vals[j][static_cast<size_t>(m)];
          nn += rule.weights[j] * vals[j][static_cast<size_t>(n)] * vals[j][static_cast<size_t>(n)];
          mm += rule.weights[j] * vals[j][static_cast<size_t>(m)] * vals[j][static_cast<size_t>(m)];
        }
        worst = std::max(worst, std::fabs(dot) / std::sqrt(nn * mm));
      }
    }
  }
  return worst;
}

double jacobi_endpoint() {
  std::mt19937 rng(7102);
  std::uniform_real_distribution<double> par(-0.9, 4.0);
  double worst = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    const jacobi::JacobiParams p{par(rng), par(rng)};
    for (int n = 0; n <= 30; ++n) {
      worst = std::max(worst, rel_diff(jacobi::eval(n, p, 1.0), jacobi::endpoint_value(n, p)));
    }
  }
  return worst;
}

double jacobi_relations_grid() {
  std::mt19937 rng(7103);
  std::uniform_real_distribution<double> par(-0.9, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const jacobi::JacobiParams p{par(rng), par(rng)};
    for (int n = 1; n <= 20; n += (n < 6 ? 1 : 3)) {
      for (int g = 0; g < 50; ++g) {
        const double z = -0.98 + 1.96 * g / 49.0;
        worst = std::max(worst, jacobi::check_relations(n, p, z).max_residual);
      }
    }
  }
  // spots where the half-integer parameters sit near the admissible edge
  worst = std::max(worst, jacobi::check_relations(3, {0.5, 1.5}, 0.3).max_residual);
  worst = std::max(worst, jacobi::check_relations(5, {-0.5, 6.5}, -0.9).max_residual);
  return worst;
}

double jacobi_derivative_fd() {
  const double h = 1e-6;
  double worst = 0.0;
  for (const jacobi::JacobiParams p : {jacobi::JacobiParams{0.0, 0.0},
                                       jacobi::JacobiParams{1.0, 0.5},
                                       jacobi::JacobiParams{-0.5, 2.5}}) {
    for (int n = 1; n <= 10; ++n) {
      for (double z : {-0.7, -0.2, 0.31, 0.84}) {
        const double fd = (jacobi::eval(n, p, z + h) - jacobi::eval(n, p, z - h)) / (2.0 * h);
        const double an = jacobi::eval_with_derivative(n, p, z).derivative;
        worst = std::max(worst, std::fabs(fd - an) / std::max(1.0, std::fabs(an)));
      }
    }
  }
  return worst;
}

double jacobi_weight_sum() {
  double worst = 0.0;
  for (const jacobi::JacobiParams p : {jacobi::JacobiParams{0.0, 0.0},
                                       jacobi::JacobiParams{1.0, 0.0},
                                       jacobi::JacobiParams{-0.5, 6.5},
                                       jacobi::JacobiParams{1.5, 0.5}}) {
    for (int n : {1, 3, 12}) {
      const auto rule = jacobi::gauss_jacobi(n, p);
      double s = 0.0;
      double prev = -1.0;
      for (size_t j = 0; j < rule.weights.size(); ++j) {
        if (rule.weights[j] <= 0.0) return std::numeric_limits<double>::infinity();
        if (rule.nodes[j] <= prev || std::fabs(rule.nodes[j]) >= 1.0) {
          return std::numeric_limits<double>::infinity();
        }
        prev = rule.nodes[j];
        s += rule.weights[j];
      }
      worst = std::max(worst, rel_diff(s, jacobi::weight_integral(p)));
    }
  }
  return worst;
}

// ---------------------------------------------------------------- radial

const std::vector<double> kAlphas{-0.5, 0.0, 1.5};
const std::vector<int> kElls{0, 1, 7, 64};

double radial_orthonormality() {
  double worst = 0.0;
  for (double alpha : kAlphas) {
    for (int ell : {0, 1, 7}) {
      const radial::RadialBasisId b{alpha, ell};
      const auto q = radial::radial_quadrature(b, 12);
      for (int n = 0; n < 8; ++n) {
        for (int m = 0; m <= n; ++m) {
          double s = 0.0;
          for (size_t j = 0; j < q.r.size(); ++j) {
            s += q.w[j] * radial::eval_Q(n, b, q.r[j]) * radial::eval_Q(m, b, q.r[j]);
          }
          worst = std::max(worst, std::fabs(s - (n == m ? 1.0 : 0.0)));
        }
      }
    }
  }
  return worst;
}

double radial_ctc_plus_rtr() {
  const int N = 24;
  double worst = 0.0;
  for (double alpha : kAlphas) {
    for (int ell : kElls) {
      const radial::RadialBasisId b{alpha, ell};
      const MatrixXd c = radial::build_C(b, N).dense();
      const MatrixXd r = radial::build_R(b, N).dense();
      worst = std::max(worst, (c.transpose() * c + r.transpose() * r -
                               MatrixXd::Identity(N, N))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  }
  return worst;
}

double radial_factor_commutation() {
  const int N = 24;
  double worst = 0.0;
  for (double alpha : kAlphas) {
    for (int ell : {1, 7, 64}) {
      const auto route1 = radial::build_Dminus({alpha + 1.0, ell + 1}, N)
                              .compose(radial::build_Dplus({alpha, ell}, N));
      const auto route2 = radial::build_Dplus({alpha + 1.0, ell - 1}, N)
                              .compose(radial::build_Dminus({alpha, ell}, N));
      worst = std::max(worst, (route1.dense() - route2.dense()).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double radial_degree_reduction() {
  // a polynomial of total degree 2k+ell maps to degree 2k+ell-1 under either
  // operator: trailing coefficients of the image vanish, and the image
  // matches the analytic first-order action pointwise
  const int N = 16, k = 9;
  const radial::RadialBasisId b{0.5, 3};
  std::mt19937 rng(7203);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  VectorXd f = VectorXd::Zero(N);
  for (int n = 0; n <= k; ++n) f(n) = unit(rng);
  const VectorXd up = radial::build_Dplus(b, N).apply(f);
  const VectorXd dn = radial::build_Dminus(b, N).apply(f);
  double worst = 0.0;
  for (int n = k; n < N; ++n) {
    worst = std::max(worst, std::fabs(up(n)));
    if (n > k) worst = std::max(worst, std::fabs(dn(n)));
  }
  // pointwise: D+ = d/dr - ell/r, D- = d/dr + (ell+1)/r
  for (double r : {0.31, 0.57, 0.92}) {
    double val = 0.0, der = 0.0, vup = 0.0, vdn = 0.0;
    for (int n = 0; n < N; ++n) {
      val += f(n) * radial::eval_Q(n, b, r);
      der += f(n) * radial::eval_Q_deriv(n, b, r);
      vup += up(n) * radial::eval_Q(n, {b.alpha + 1.0, b.ell + 1}, r);
      vdn += dn(n) * radial::eval_Q(n, {b.alpha + 1.0, b.ell - 1}, r);
    }
    const double scale = std::max(1.0, std::fabs(der));
    worst = std::max(worst, std::fabs(vup - (der - b.ell / r * val)) / scale);
    worst = std::max(worst, std::fabs(vdn - (der + (b.ell + 1.0) / r * val)) / scale);
  }
  return worst;
}

double radial_band_structure() {
  const int N = 12;
  for (double alpha : kAlphas) {
    for (int ell : kElls) {
      const radial::RadialBasisId b{alpha, ell};
      const auto dp = radial::build_Dplus(b, N);
      const auto c = radial::build_C(b, N);
      const auto r = radial::build_R(b, N);
      // derivative operators: at most 2 bands, no n-coupling for the diagonal one
      if (dp.band_count() != 1 || !dp.bands.count(1)) return 1.0;
      if (ell >= 1) {
        const auto dm = radial::build_Dminus(b, N);
        if (dm.band_count() != 1 || !dm.bands.count(0)) return 1.0;
      }
      // pointwise-local operators: exactly two bands
      if (c.band_count() != 2 || !c.bands.count(0) || !c.bands.count(1)) return 1.0;
      if (r.band_count() != 2 || !r.bands.count(0) || !r.bands.count(1)) return 1.0;
      // label bookkeeping
      if (!(dp.out_basis == radial::RadialBasisId{alpha + 1.0, ell + 1})) return 1.0;
      if (!(c.out_basis == radial::RadialBasisId{alpha + 1.0, ell})) return 1.0;
      if (!(r.out_basis == radial::RadialBasisId{alpha, ell + 1})) return 1.0;
    }
  }
  return 0.0;
}

double radial_matsushima_composite() {
  // 2 r d/dr f against Q^{a,l} (R D- + Rt D+ - C) acting on coefficients in
  // the (a-1, l) family
  const int N = 20;
  double worst = 0.0;
  std::mt19937 rng(7201);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (double alpha : {0.5, 1.5}) {
    for (int ell : {1, 3, 8}) {
      const radial::RadialBasisId lo{alpha - 1.0, ell};
      VectorXd f = VectorXd::Zero(N);
      for (int n = 0; n < N - 3; ++n) f(n) = unit(rng);
      const auto rd = radial::build_R({alpha, ell - 1}, N)
                          .compose(radial::build_Dminus(lo, N));
      const auto rtd = radial::build_R({alpha, ell}, N)
                           .transposed()
                           .compose(radial::build_Dplus(lo, N));
      const auto conv = radial::build_C(lo, N);
      const VectorXd composite = rd.apply(f) + rtd.apply(f) - conv.apply(f);
      const auto quad = radial::radial_quadrature({alpha, ell}, N + 4);
      const VectorXd lhs_pts = [&] {
        VectorXd v(static_cast<Eigen::Index>(quad.r.size()));
        for (size_t j = 0; j < quad.r.size(); ++j) {
          double df = 0.0;
          for (int n = 0; n < N; ++n) df += f(n) * radial::eval_Q_deriv(n, lo, quad.r[j]);
          v(static_cast<Eigen::Index>(j)) = 2.0 * quad.r[j] * df;
        }
        return v;
      }();
      const VectorXd rhs_pts =
          radial::transform_backward(composite, {alpha, ell}, quad.r);
      worst = std::max(worst, (lhs_pts - rhs_pts).cwiseAbs().maxCoeff() /
                                  std::max(1.0, lhs_pts.cwiseAbs().maxCoeff()));
    }
  }
  return worst;
}

double radial_rtr_shifted() {
  // r^2 route equality on the interior block
  const int N = 24;
  double worst = 0.0;
  for (double alpha : kAlphas) {
    for (int ell : {1, 7}) {
      const MatrixXd lhs = radial::build_R({alpha, ell}, N).dense().transpose() *
                           radial::build_R({alpha, ell}, N).dense();
      const MatrixXd rhs = radial::build_R({alpha, ell - 1}, N).dense() *
                           radial::build_R({alpha, ell - 1}, N).dense().transpose();
      worst = std::max(worst,
                       (lhs - rhs).topLeftCorner(N - 1, N - 1).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double radial_restriction_dual_route() {
  double worst = 0.0;
  for (double alpha : kAlphas) {
    for (int ell : {0, 2, 9}) {
      const radial::RadialBasisId b{alpha, ell};
      const Eigen::RowVectorXd row = radial::restriction_row(b, 41);
      for (int n = 0; n <= 40; ++n) {
        worst = std::max(worst, std::fabs(row(n) - radial::eval_Q(n, b, 1.0)) /
                                    std::fabs(row(n)));
      }
    }
  }
  return worst;
}

double radial_restriction_growth() {
  // exponent alpha + 1/2 from the n in [200,400] ratio; alpha=-1/2 flat at
  // 2/sqrt(pi)
  const Eigen::RowVectorXd r0 = radial::restriction_row({0.0, 3}, 401);
  const double expo = std::log(r0(400) / r0(200)) / std::log(400.0 / 200.0);
  double worst = std::fabs(expo - 0.5) / 0.02;  // scaled so tolerance 1 = +-0.02
  const Eigen::RowVectorXd rh = radial::restriction_row({-0.5, 3}, 401);
  const double target = 2.0 / std::sqrt(std::numbers::pi);
  worst = std::max(worst, std::fabs(rh(400) - target) / (target * 0.02));
  return worst;
}

double radial_transform_roundtrip() {
  std::mt19937 rng(7202);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const radial::RadialBasisId b{0.0, 5};
  const int N = 16;
  const auto quad = radial::radial_quadrature(b, N);
  VectorXd f(N);
  for (int n = 0; n < N; ++n) f(n) = unit(rng);
  const VectorXd samples = radial::transform_backward(f, b, quad.r);
  const VectorXd back = radial::transform_forward(samples, quad, b, N);
  return (back - f).cwiseAbs().maxCoeff();
}

double radial_transform_two_coeffs() {
  // r^l (1-r^2) has exactly two nonzero coefficients
  const radial::RadialBasisId b{0.0, 4};
  const int N = 12;
  const auto quad = radial::radial_quadrature(b, N);
  VectorXd samples(static_cast<Eigen::Index>(quad.r.size()));
  for (size_t j = 0; j < quad.r.size(); ++j) {
    samples(static_cast<Eigen::Index>(j)) =
        std::pow(quad.r[j], b.ell) * (1.0 - quad.r[j] * quad.r[j]);
  }
  const VectorXd f = radial::transform_forward(samples, quad, b, N);
  double worst = 0.0;
  for (int n = 2; n < N; ++n) worst = std::max(worst, std::fabs(f(n)));
  return worst / f.cwiseAbs().maxCoeff();
}

double radial_bessel_decay() {
  // smooth spherical-Bessel-like input: coefficients below 1e-10 of peak by
  // n = 30 for ell = 2 (residual scaled so tolerance 1.0)
  const radial::RadialBasisId b{0.0, 2};
  const int N = 40;
  const auto quad = radial::radial_quadrature(b, N);
  auto j2 = [](double x) {
    if (x < 1e-4) return x * x / 15.0;
    return (3.0 / (x * x * x) - 1.0 / x) * std::sin(x) - 3.0 * std::cos(x) / (x * x);
  };
  VectorXd samples(static_cast<Eigen::Index>(quad.r.size()));
  for (size_t j = 0; j < quad.r.size(); ++j) {
    samples(static_cast<Eigen::Index>(j)) = j2(10.0 * quad.r[j]);
  }
  const VectorXd f = radial::transform_forward(samples, quad, b, N);
  double tail = 0.0;
  for (int n = 30; n < N; ++n) tail = std::max(tail, std::fabs(f(n)));
  return tail / f.cwiseAbs().maxCoeff() / 1e-10;
}

// ---------------------------------------------------------------- angular

double angular_orthonormality() {
  const int K = 24;
  const auto grid = angular::gauss_legendre_theta(K);
  double worst = 0.0;
  for (const auto& [m, s] : std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {3, -2}, {2, 1}}) {
    const int l0 = angular::ell_min(m, s);
    for (int l1 = l0; l1 <= l0 + 6; ++l1) {
      for (int l2 = l0; l2 <= l1; ++l2) {
        double dot = 0.0;
        for (size_t j = 0; j < grid.theta.size(); ++j) {
          dot += grid.weight[j] * angular::eval_Ys_theta({l1, m, s}, grid.theta[j]) *
                 angular::eval_Ys_theta({l2, m, s}, grid.theta[j]);
        }
        dot *= 2.0 * std::numbers::pi;
        worst = std::max(worst, std::fabs(dot - (l1 == l2 ? 1.0 : 0.0)));
      }
    }
  }
  return worst;
}

double angular_conjugation() {
  double worst = 0.0;
  for (const auto& [ell, m, s] : std::vector<std::array<int, 3>>{{3, 1, 0}, {4, 2, -1}, {5, -3, 2}}) {
    for (double th : {0.3, 1.2, 2.6}) {
      for (double ph : {0.4, 2.0}) {
        const auto a = angular::eval_Ys({ell, m, s}, th, -ph);
        const auto b = std::conj(angular::eval_Ys({ell, m, s}, th, ph));
        worst = std::max(worst, std::abs(a - b));
      }
    }
  }
  return worst;
}

double angular_cos_symmetry() {
  double worst = 0.0;
  for (const auto& [s, m] : std::vector<std::pair<int, int>>{{0, 0}, {1, 2}, {-2, 3}, {2, -1}}) {
    const auto op = angular::build_cos_op(s, m, 30);
    worst = std::max(worst, (op.mat - op.mat.transpose()).cwiseAbs().maxCoeff());
    if (s == 0) worst = std::max(worst, op.mat.diagonal().cwiseAbs().maxCoeff());
  }
  return worst;
}

double angular_sin_transpose() {
  double worst = 0.0;
  for (const auto& [s, m] : std::vector<std::pair<int, int>>{{1, 2}, {0, 0}, {-1, 3}, {2, 2}}) {
    const auto sm = angular::build_sin_op(s, m, 30, -1);
    const auto sp = angular::build_sin_op(s - 1, m, 30, +1);
    worst = std::max(worst, (sm.mat - sp.mat.transpose()).cwiseAbs().maxCoeff());
  }
  return worst;
}

double angular_identity_block(int s, int m, int Lmax) {
  const auto cs = angular::build_cos_op(s, m, Lmax);
  const auto sp = angular::build_sin_op(s - 1, m, Lmax, +1);
  const auto sm = angular::build_sin_op(s, m, Lmax, -1);
  const MatrixXd lhs = cs.mat * cs.mat + sp.mat * sm.mat;
  const int n = static_cast<int>(lhs.rows());
  return (lhs.topLeftCorner(n - 1, n - 1) - MatrixXd::Identity(n - 1, n - 1))
      .cwiseAbs()
      .maxCoeff();
}

double angular_cc_plus_ss() {
  double worst = angular_identity_block(1, 2, 40);
  for (const auto& [s, m] : std::vector<std::pair<int, int>>{{0, 0}, {-1, 2}, {2, -3}}) {
    worst = std::max(worst, angular_identity_block(s, m, 24));
  }
  return worst;
}

double angular_op_commutation() {
  double worst = 0.0;
  for (const auto& [s, m] : std::vector<std::pair<int, int>>{{0, 0}, {1, 2}, {-1, 1}}) {
    const int Lmax = 24;
    const auto cs = angular::build_cos_op(s, m, Lmax);
    const auto cs1 = angular::build_cos_op(s + 1, m, Lmax);
    const auto sp = angular::build_sin_op(s, m, Lmax, +1);
    const auto sm1 = angular::build_sin_op(s + 1, m, Lmax, -1);
    const auto sp_m1 = angular::build_sin_op(s - 1, m, Lmax, +1);
    const auto sm = angular::build_sin_op(s, m, Lmax, -1);
    {
      const MatrixXd a = cs1.mat * sp.mat;
      const MatrixXd b = sp.mat * cs.mat;
      const int r = static_cast<int>(a.rows()), c = static_cast<int>(a.cols());
      worst = std::max(worst, (a - b).topLeftCorner(r - 1, c - 1).cwiseAbs().maxCoeff());
    }
    {
      const MatrixXd a = sm1.mat * sp.mat;
      const MatrixXd b = sp_m1.mat * sm.mat;
      const int r = static_cast<int>(a.rows()), c = static_cast<int>(a.cols());
      worst = std::max(worst, (a - b).topLeftCorner(r - 1, c - 1).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double angular_k_commutator() {
  double worst = 0.0;
  for (int s = -4; s <= 4; ++s) {
    for (int ell = std::abs(s); ell <= 50; ++ell) {
      const double val = angular::k_wavenumber(-1, ell, s + 1) * angular::k_wavenumber(1, ell, s) -
                         angular::k_wavenumber(1, ell, s - 1) * angular::k_wavenumber(-1, ell, s);
      worst = std::max(worst, std::fabs(val - s));
      const double sum = angular::k_wavenumber(-1, ell, s + 1) * angular::k_wavenumber(1, ell, s) +
                         angular::k_wavenumber(1, ell, s - 1) * angular::k_wavenumber(-1, ell, s);
      worst = std::max(worst, std::fabs(sum - (-static_cast<double>(ell) * (ell + 1) + s * s)));
    }
  }
  return worst;
}

double angular_gradient_fd() {
  // covariant derivative against finite differences in theta, both spins
  const double h = 1e-5;
  double worst = 0.0;
  for (const auto& [ell, m, s] : std::vector<std::array<int, 3>>{
           {2, 1, 0}, {4, 2, -1}, {5, 0, 2}, {6, -2, 1}}) {
    for (double th : {0.7, 1.3, 2.2}) {
      const double y = angular::eval_Ys_theta({ell, m, s}, th);
      const double dy = (angular::eval_Ys_theta({ell, m, s}, th + h) -
                         angular::eval_Ys_theta({ell, m, s}, th - h)) /
                        (2.0 * h);
      for (int mu = -1; mu <= 1; mu += 2) {
        if (std::abs(s + mu) > ell) continue;
        const double lhs = (dy - mu * m / std::sin(th) * y) / std::sqrt(2.0) -
                           mu * s * (std::cos(th) / std::sin(th)) / std::sqrt(2.0) * y;
        const double rhs =
            angular::k_wavenumber(mu, ell, s) * angular::eval_Ys_theta({ell, m, s + mu}, th);
        worst = std::max(worst, std::fabs(lhs - rhs));
      }
    }
  }
  return worst;
}

double angular_pointwise_trig() {
  double worst = 0.0;
  for (const auto& [ell, m, s] : std::vector<std::array<int, 3>>{{4, 2, -1}, {3, 1, 1}, {5, 3, 0}}) {
    for (double th : {0.5, 1.4, 2.7}) {
      const double y = angular::eval_Ys_theta({ell, m, s}, th);
      {
        const double lhs = std::sin(th) * y;
        const double rhs =
            angular::sin_offdiag_coeff(ell + 1, -s - 1, m) * angular::eval_Ys_theta({ell + 1, m, s + 1}, th) +
            angular::sin_diag_coeff(ell, s, m) * angular::eval_Ys_theta({ell, m, s + 1}, th) -
            (ell - 1 >= angular::ell_min(m, s + 1)
                 ? angular::sin_offdiag_coeff(ell, s, m) * angular::eval_Ys_theta({ell - 1, m, s + 1}, th)
                 : 0.0);
        worst = std::max(worst, std::fabs(lhs - rhs));
      }
      {
        const double lhs = std::cos(th) * y;
        const double rhs =
            angular::cos_offdiag_coeff(ell + 1, m, s) * angular::eval_Ys_theta({ell + 1, m, s}, th) +
            angular::cos_diag_coeff(ell, m, s) * y +
            (ell - 1 >= angular::ell_min(m, s)
                 ? angular::cos_offdiag_coeff(ell, m, s) * angular::eval_Ys_theta({ell - 1, m, s}, th)
                 : 0.0);
        worst = std::max(worst, std::fabs(lhs - rhs));
      }
    }
  }
  return worst;
}

double angular_swsh_roundtrip() {
  const int Lmax = 12;
  const auto grid = angular::gauss_legendre_theta(Lmax + 1);
  double worst = 0.0;
  for (const auto& [m, s] : std::vector<std::pair<int, int>>{{3, -2}, {0, 0}, {-2, 1}}) {
    const int l0 = angular::ell_min(m, s);
    std::mt19937 rng(7301);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    VectorXcd c(Lmax - l0 + 1);
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = std::complex<double>(unit(rng), unit(rng));
    const VectorXcd back =
        angular::swsh_forward(m, s, angular::swsh_backward(m, s, c, grid, Lmax), grid, Lmax);
    worst = std::max(worst, (back - c).cwiseAbs().maxCoeff());
    // unit coefficient from sampled harmonic
    VectorXcd samples(static_cast<Eigen::Index>(grid.theta.size()));
    const int lpick = std::min(Lmax, l0 + 2);
    for (size_t j = 0; j < grid.theta.size(); ++j) {
      samples(static_cast<Eigen::Index>(j)) = angular::eval_Ys_theta({lpick, m, s}, grid.theta[j]);
    }
    const VectorXcd coeffs = angular::swsh_forward(m, s, samples, grid, Lmax);
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
      const double want = (i == lpick - l0) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(coeffs(i) - want));
    }
  }
  return worst;
}

double angular_parity() {
  // conjugated samples of the (m,s) family transform as the (-m,-s) family
  // with the (-1)^{m+s} sign
  const int Lmax = 10;
  const auto grid = angular::gauss_legendre_theta(Lmax + 1);
  double worst = 0.0;
  for (const auto& [m, s] : std::vector<std::pair<int, int>>{{2, -1}, {1, 1}, {-3, 2}}) {
    const int l0 = angular::ell_min(m, s);
    std::mt19937 rng(7302);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    VectorXcd c(Lmax - l0 + 1);
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = std::complex<double>(unit(rng), unit(rng));
    const VectorXcd samples = angular::swsh_backward(m, s, c, grid, Lmax);
    const VectorXcd flipped = angular::swsh_forward(-m, -s, samples.conjugate(), grid, Lmax);
    const double sign = ((m + s) % 2 == 0) ? 1.0 : -1.0;
    worst = std::max(worst, (flipped - sign * c.conjugate()).cwiseAbs().maxCoeff());
  }
  return worst;
}

// ---------------------------------------------------------------- regularity

double q_orthonormality() {
  double worst = 0.0;
  for (int rank = 0; rank <= 3; ++rank) {
    for (int ell = 0; ell <= 20; ++ell) {
      const auto q = reg::build_Q(ell, rank);
      const int dim = static_cast<int>(q.matrix.cols());
      const int nv = q.valid_count();
      MatrixXd qv(dim, nv);
      int c = 0;
      for (int j = 0; j < dim; ++j) {
        if (q.valid_cols[static_cast<size_t>(j)]) qv.col(c++) = q.matrix.col(j);
      }
      worst = std::max(
          worst, (qv.transpose() * qv - MatrixXd::Identity(nv, nv)).cwiseAbs().maxCoeff());
      if (!q.matrix.allFinite()) return std::numeric_limits<double>::infinity();
      // row completeness on the physical rows when no column is masked
      if (nv == dim) {
        worst = std::max(
            worst, (qv * qv.transpose() - MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

double q_rank1_closed_form() {
  double worst = 0.0;
  for (int ell = 1; ell <= 40; ++ell) {
    const auto q = reg::build_Q(ell, 1);
    const double xm = reg::xi(-1, ell), xp = reg::xi(1, ell);
    const double s2 = std::sqrt(2.0);
    MatrixXd ref(3, 3);
    ref << xp / s2, 1.0 / s2, -xm / s2, xm, 0.0, xp, -xp / s2, 1.0 / s2, xm / s2;
    worst = std::max(worst, (q.matrix - ref).cwiseAbs().maxCoeff());
  }
  return worst;
}

double q_low_ell_masking() {
  const auto q0 = reg::build_Q(0, 1);
  if (q0.valid_cols[0] || q0.valid_cols[1] || !q0.valid_cols[2]) return 1.0;
  // valid-column count equals the number of representable spin rows
  for (int rank = 1; rank <= 3; ++rank) {
    for (int ell = 0; ell <= 3; ++ell) {
      int rows = 0;
      const int dim = static_cast<int>(std::pow(3, rank));
      for (int i = 0; i < dim; ++i) {
        if (std::abs(reg::MultiIndex::from_flat(i, rank).spin_weight()) <= ell) ++rows;
      }
      if (reg::build_Q(ell, rank).valid_count() != rows) return 1.0;
    }
  }
  return 0.0;
}

double xi_identities() {
  double worst = 0.0;
  for (int ell : {0, 1, 5, 17}) {
    const double xm = reg::xi(-1, ell), xp = reg::xi(1, ell);
    worst = std::max(worst, std::fabs(xm * xm + xp * xp - 1.0));
  }
  // shift relation at a=+1, ell=5
  for (int ell : {0, 5, 12}) {
    const double lhs = reg::xi(1, ell);
    const double rhs =
        reg::xi(-1, ell + 1) * std::sqrt((2.0 * (ell + 1) + 1.0) / (2.0 * ell + 1.0));
    worst = std::max(worst, std::fabs(lhs - rhs));
  }
  if (reg::xi(-1, 0) != 0.0 || reg::xi(1, 0) != 1.0 || reg::xi(0, 9) != 0.0) return 1.0;
  return worst;
}

double generator_commutators() {
  double worst = 0.0;
  for (int rank = 1; rank <= 4; ++rank) {
    const auto g = reg::build_generators(rank);
    const auto comm = [](const MatrixXd& a, const MatrixXd& b) { return a * b - b * a; };
    worst = std::max(worst, (comm(g.j0, g.jplus) - g.jplus).cwiseAbs().maxCoeff());
    worst = std::max(worst, (comm(g.j0, g.jminus) + g.jminus).cwiseAbs().maxCoeff());
    worst = std::max(worst, (comm(g.jplus, g.jminus) - 2.0 * g.j0).cwiseAbs().maxCoeff());
    worst = std::max(worst, (g.jplus.transpose() - g.jminus).cwiseAbs().maxCoeff());
  }
  return worst;
}

double contraction_identity() {
  double worst = 0.0;
  for (int rank = 2; rank <= 3; ++rank) {
    for (int ell = 0; ell <= 10; ++ell) {
      worst = std::max(worst, reg::contract_identity_check(ell, rank));
    }
  }
  return worst;
}

double degeneracy_trinomial() {
  for (int rank = 0; rank <= 5; ++rank) {
    // coefficients of (1+x+x^2)^rank
    std::vector<long long> poly{1};
    for (int r = 0; r < rank; ++r) {
      std::vector<long long> next(poly.size() + 2, 0);
      for (size_t i = 0; i < poly.size(); ++i) {
        next[i] += poly[i];
        next[i + 1] += poly[i];
        next[i + 2] += poly[i];
      }
      poly = std::move(next);
    }
    for (int a = -rank - 1; a <= rank + 1; ++a) {
      const long long want =
          (std::abs(a) > rank) ? 0 : poly[static_cast<size_t>(a + rank)];
      if (reg::degeneracy(a, rank) != want) return 1.0;
    }
  }
  return 0.0;
}

double unitary_spin_transform() {
  double worst = 0.0;
  for (int rank = 1; rank <= 2; ++rank) {
    const auto t = reg::spin_basis_transform(rank);
    const Eigen::Index n = t.u.rows();
    worst = std::max(
        worst, (t.u * t.u.adjoint() - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff());
  }
  // identity tensor has only spin-weight-zero components
  const auto t2 = reg::spin_basis_transform(2);
  VectorXcd delta = VectorXcd::Zero(9);
  for (int c = 0; c < 3; ++c) delta(4 * c) = 1.0;  // rr, tt, pp
  const VectorXcd spin = t2.to_spin(delta);
  double worst2 = 0.0;
  for (int i = 0; i < 9; ++i) {
    if (reg::MultiIndex::from_flat(i, 2).spin_weight() != 0) {
      worst2 = std::max(worst2, std::abs(spin(i)));
    }
  }
  // round trip
  worst = std::max(worst, (t2.to_coord(spin) - delta).cwiseAbs().maxCoeff());
  return std::max(worst, worst2);
}

// ---------------------------------------------------------------- tensor

double lambda_rank1_closed_form() {
  double worst = 0.0;
  for (int ell = 1; ell <= 20; ++ell) {
    const auto lam = tensor::build_lambda(1, ell);
    const double L = ell * (ell + 1.0), c = std::sqrt(2.0 * ell * (ell + 1.0));
    MatrixXd ref(3, 3);
    ref << L, -c, 0.0, -c, L + 2.0, c, 0.0, c, L;
    worst = std::max(worst, (lam.matrix - ref).cwiseAbs().maxCoeff());
  }
  return worst;
}

double lambda_diagonalization() {
  double worst = 0.0;
  for (int rank = 1; rank <= 2; ++rank) {
    for (int ell = rank; ell <= 20; ++ell) {
      const auto lam = tensor::build_lambda(rank, ell);
      const auto q = reg::build_Q(ell, rank);
      const MatrixXd d = q.matrix.transpose() * lam.matrix * q.matrix;
      const int dim = static_cast<int>(d.rows());
      for (int i = 0; i < dim; ++i) {
        const int abar = reg::MultiIndex::from_flat(i, rank).spin_weight();
        const double want = (ell + abar) * (ell + abar + 1.0);
        worst = std::max(worst, std::fabs(d(i, i) - want));
        for (int j = 0; j < dim; ++j) {
          if (i != j) worst = std::max(worst, std::fabs(d(i, j)));
        }
      }
      worst = std::max(worst, (lam.matrix - lam.matrix.transpose()).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double lambda_multiplicities() {
  // eigenvalue multiplicities follow the degeneracy triangle
  double worst = 0.0;
  for (const auto& [rank, ell] : std::vector<std::pair<int, int>>{{1, 1}, {1, 5}, {2, 3}, {2, 7}}) {
    const auto lam = tensor::build_lambda(rank, ell);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(lam.matrix);
    for (int a = -rank; a <= rank; ++a) {
      long long count = 0;
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        // eigenvalues may coincide across different a at small ell; count by
        // nearest-lambda assignment
        double best = std::numeric_limits<double>::max();
        int best_a = -rank - 5;
        for (int aa = -rank; aa <= rank; ++aa) {
          const double cand = (ell + aa) * (ell + aa + 1.0);
          if (std::fabs(es.eigenvalues()(i) - cand) < best) {
            best = std::fabs(es.eigenvalues()(i) - cand);
            best_a = aa;
          }
        }
        if (best_a == a) {
          ++count;
          worst = std::max(worst, best);
        }
      }
      if (ell >= 2 * rank && count != reg::degeneracy(a, rank)) return 1e9;
    }
  }
  return worst;
}

double spin_ops_consistency() {
  double worst = 0.0;
  for (int rank = 0; rank <= 2; ++rank) {
    for (int ell : {2, 5, 11}) {
      const auto go = tensor::spin_gradient_ops(rank, ell);
      const auto dv = tensor::spin_divergence_ops(rank, ell);
      const int dim = static_cast<int>(go.gr.cols());
      worst = std::max(worst,
                       (dv.dr * go.gr - MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff());
      worst = std::max(worst, (dv.dm * go.gr + dv.dr * go.gm -
                               2.0 * MatrixXd::Identity(dim, dim))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  }
  return worst;
}

double matrix_div_curl_zero() {
  double worst = 0.0;
  const int N = 32;
  for (int ell : {1, 2, 5, 16}) {
    const MatrixXcd prod = tensor::divergence_matrix(1.0, ell, N) * tensor::curl_matrix(0.0, ell, N);
    worst = std::max(worst, prod.cwiseAbs().maxCoeff());
  }
  return worst;
}

double matrix_curl_grad_zero() {
  double worst = 0.0;
  const int N = 32;
  for (int ell : {1, 2, 5, 16}) {
    const MatrixXcd prod = tensor::curl_matrix(1.0, ell, N) * tensor::gradient_matrix(0.0, ell, N);
    worst = std::max(worst, prod.cwiseAbs().maxCoeff());
  }
  return worst;
}

double matrix_vector_laplacian() {
  double worst = 0.0;
  const int N = 32;
  for (int ell : {1, 2, 5, 16}) {
    const MatrixXcd lhs =
        tensor::gradient_matrix(1.0, ell, N) * tensor::divergence_matrix(0.0, ell, N) -
        tensor::curl_matrix(1.0, ell, N) * tensor::curl_matrix(0.0, ell, N);
    const MatrixXcd lap = tensor::laplacian_matrix(0.0, ell, N);
    worst = std::max(worst, (lhs - lap).cwiseAbs().maxCoeff() /
                                std::max(1.0, lap.cwiseAbs().maxCoeff()));
  }
  return worst;
}

tensor::TensorFieldSpec random_spec(int rank, double alpha, int Lmax, int N, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  tensor::TensorFieldSpec spec;
  spec.rank = rank;
  spec.alpha = alpha;
  spec.N = N;
  const int dim = static_cast<int>(std::pow(3, rank));
  for (int ell = 0; ell <= Lmax; ++ell) {
    for (int m = -ell; m <= ell; ++m) {
      for (int a = 0; a < dim; ++a) {
        if (!tensor::TensorFieldSpec::component_exists(ell, rank, a)) continue;
        VectorXcd v(N);
        for (int n = 0; n < N; ++n) v(n) = std::complex<double>(unit(rng), unit(rng));
        spec.entries.emplace(tensor::ComponentKey{ell, m, a}, std::move(v));
      }
    }
  }
  return spec;
}

double laplacian_factor_orders() {
  // both factorization orders agree; components with ell+abar = 0 excluded
  auto spec = random_spec(1, 0.0, 5, 14, 7401);
  for (auto it = spec.entries.begin(); it != spec.entries.end();) {
    const int L = it->first.ell +
                  reg::MultiIndex::from_flat(it->first.a_flat, 1).spin_weight();
    it = (L < 1) ? spec.entries.erase(it) : std::next(it);
  }
  const auto a = tensor::laplacian(spec, tensor::FactorOrder::MinusPlus);
  const auto b = tensor::laplacian(spec, tensor::FactorOrder::PlusMinus);
  return tensor::max_difference(a, b) / std::max(1.0, a.max_abs());
}

double spec_calculus_identities() {
  // div curl = 0, curl grad = 0, laplacian = div grad (scalars),
  // laplacian = grad div - curl curl (vectors), on random band-limited specs
  double worst = 0.0;
  {
    const auto f = random_spec(0, 0.0, 4, 12, 7402);
    const auto cg = tensor::curl(tensor::gradient(f));
    worst = std::max(worst, cg.max_abs());
    const auto dg = tensor::divergence(tensor::gradient(f));
    const auto lap = tensor::laplacian(f);
    worst = std::max(worst, tensor::max_difference(dg, lap) / std::max(1.0, lap.max_abs()));
  }
  {
    const auto v = random_spec(1, 0.0, 4, 12, 7403);
    const auto dc = tensor::divergence(tensor::curl(v));
    worst = std::max(worst, dc.max_abs() / std::max(1.0, v.max_abs()));
    auto gd = tensor::gradient(tensor::divergence(v));
    const auto cc = tensor::curl(tensor::curl(v));
    const auto lap = tensor::laplacian(v);
    tensor::TensorFieldSpec diff = gd;
    for (auto& [k, val] : diff.entries) {
      const auto it = cc.entries.find(k);
      if (it != cc.entries.end()) val -= it->second;
    }
    for (const auto& [k, val] : cc.entries) {
      if (diff.entries.find(k) == diff.entries.end()) diff.entries.emplace(k, -val);
    }
    worst = std::max(worst, tensor::max_difference(diff, lap) / std::max(1.0, lap.max_abs()));
  }
  return worst;
}

double sphere_laplacian_forms() {
  for (int rank = 0; rank <= 3; ++rank) {
    const int dim = static_cast<int>(std::pow(3, rank));
    for (int flat = 0; flat < dim; ++flat) {
      const auto sigma = reg::MultiIndex::from_flat(flat, rank);
      const int s = sigma.spin_weight();
      for (int ell = std::abs(s); ell <= 30; ++ell) {
        const auto [rough, restricted] = tensor::sphere_laplacian_check(sigma, ell);
        if (std::fabs(rough - (-static_cast<double>(ell) * (ell + 1) + s * s)) > 1e-12) return 1.0;
        if (std::fabs(restricted - (-(static_cast<double>(ell) * (ell + 1) - s * s + rank))) >
            1e-12) {
          return 1.0;
        }
      }
    }
  }
  return 0.0;
}

double projection_roundtrip(int rank, unsigned seed) {
  const int Lmax = 8, N = 12;
  const auto gspec = tensor::make_grid_spec(rank, 0.0, Lmax, N);
  const auto spec = random_spec(rank, 0.0, Lmax, N, seed);
  const auto grid = tensor::synthesize_tensor(spec, gspec);
  const auto back = tensor::project_tensor(grid);
  return tensor::max_difference(spec, back) / std::max(1.0, spec.max_abs());
}

double projection_roundtrip_rank1() { return projection_roundtrip(1, 7404); }
double projection_roundtrip_rank2() { return projection_roundtrip(2, 7405); }

double projection_gradient_fd() {
  // radial derivative of a smooth scalar field vs the sigma = 0 spin
  // component of its spectral gradient, at interior points
  auto f = random_spec(0, 0.0, 4, 8, 7406);
  for (auto& [k, v] : f.entries) {
    for (int n = 0; n < f.N; ++n) v(n) *= std::pow(3.0, -n);  // keep the field smooth
  }
  const auto g = tensor::gradient(f);
  const double h = 1e-4;
  double worst = 0.0;
  for (const int m : {0, 1, -2}) {
    for (double th : {0.9, 1.7}) {
      for (double r : {0.35, 0.62, 0.81}) {
        const auto up = tensor::eval_spin_components(f, m, th, r + h);
        const auto dn = tensor::eval_spin_components(f, m, th, r - h);
        const std::complex<double> fd = (up(0) - dn(0)) / (2.0 * h);
        const auto gv = tensor::eval_spin_components(g, m, th, r);
        worst = std::max(worst, std::abs(gv(1) - fd));
      }
    }
  }
  return worst;
}

// ---------------------------------------------------------------- solver

double tau_rowdrop_equivalence() {
  double worst = 0.0;
  for (const auto& [alpha, ell, N] :
       std::vector<std::tuple<double, int, int>>{{0.0, 2, 24}, {-0.5, 5, 32}, {1.0, 0, 20}}) {
    const auto tau = solver::assemble_bessel_tau(alpha, ell, N, solver::TauVariant::last_row_drop);
    const auto drop = solver::assemble_bessel_rowdrop(alpha, ell, N);
    const auto k1 = solver::solve_smallest_kappa(tau.pencil, 3);
    const auto k2 = solver::solve_smallest_kappa(drop, 3);
    for (int i = 0; i < 3; ++i) worst = std::max(worst, rel_diff(k1[i], k2[i]));
  }
  return worst;
}

double tau_structure() {
  // operator block strictly upper with one band; mass three bands; tau
  // column sparsities 1 / 3 / 4
  const int N = 16;
  const auto nnz = [](const VectorXd& v) {
    int c = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v(i) != 0.0) ++c;
    }
    return c;
  };
  const auto sys1 = solver::assemble_bessel_tau(0.0, 2, N, solver::TauVariant::last_row_drop);
  const auto sys2 = solver::assemble_bessel_tau(0.0, 2, N, solver::TauVariant::convert_column);
  const auto sys3 = solver::assemble_bessel_tau(-0.5, 2, N, solver::TauVariant::jones_worland);
  if (nnz(sys1.tau_column) != 1 || nnz(sys2.tau_column) != 3 || nnz(sys3.tau_column) != 4) {
    return 1.0;
  }
  for (const auto* sys : {&sys1, &sys2, &sys3}) {
    if (sys->pencil.A.rows() != N + 1) return 1.0;
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        if (j < i && sys->op_block(i, j) != 0.0) return 1.0;   // upper triangular
        if (j != i + 1 && sys->op_block(i, j) != 0.0) return 1.0;  // single band
        if ((j < i || j > i + 2) && sys->mass_block(i, j) != 0.0) return 1.0;
      }
    }
  }
  return 0.0;
}

double galerkin_boundary() {
  double worst = 0.0;
  for (const auto& [alpha, ell] : std::vector<std::pair<double, int>>{{0.0, 2}, {-0.5, 4}, {1.5, 0}}) {
    const int N = 20;
    const MatrixXd cols = solver::galerkin_trial_columns(alpha, ell, N);
    const Eigen::RowVectorXd bdry = radial::restriction_row({alpha, ell}, N);
    // the two boundary terms of each recombined column cancel; measure the
    // cancellation against their size
    const Eigen::RowVectorXd residual = bdry * cols;
    const Eigen::RowVectorXd scale = bdry.cwiseAbs() * cols.cwiseAbs();
    for (int k = 0; k + 1 < N; ++k) {
      worst = std::max(worst, std::fabs(residual(k)) / std::max(1.0, scale(k)));
    }
    // band structure of the recombined pencil: one lower band, two upper
    const auto p = solver::assemble_bessel_galerkin(alpha, ell, N);
    for (int i = 0; i < N - 1; ++i) {
      for (int j = 0; j < N - 1; ++j) {
        if ((j < i - 1 || j > i + 2) && (p.A(i, j) != 0.0 || p.B(i, j) != 0.0)) return 1.0;
      }
    }
  }
  return worst;
}

double galerkin_tau_cross() {
  const auto tau = solver::assemble_bessel_tau(0.0, 2, 64, solver::TauVariant::convert_column);
  const auto gal = solver::assemble_bessel_galerkin(0.0, 2, 64);
  const double k1 = solver::solve_smallest_kappa(tau.pencil, 1)[0];
  const double k2 = solver::solve_smallest_kappa(gal, 1)[0];
  return std::fabs(k1 - k2) / k1;
}

double eigenvalues_real_positive() {
  // smallest few kappa from each variant come out real and positive; the
  // filter rejects complex parts above 1e-10 relative, so success here means
  // the spectrum was clean
  for (const auto& [alpha, variant] : std::vector<std::pair<double, solver::TauVariant>>{
           {0.0, solver::TauVariant::last_row_drop},
           {0.0, solver::TauVariant::convert_column},
           {-0.5, solver::TauVariant::jones_worland}}) {
    for (int ell : {0, 2, 9}) {
      if (variant == solver::TauVariant::jones_worland && ell == 0) continue;
      const auto sys = solver::assemble_bessel_tau(alpha, ell, 24, variant);
      const auto ks = solver::solve_smallest_kappa(sys.pencil, 4);
      for (double k : ks) {
        if (!(k > 0.0) || !std::isfinite(k)) return 1.0;
      }
    }
  }
  return 0.0;
}

double chebyshev_structure() {
  const int N = 24;
  for (int ell : {2, 5}) {
    const MatrixXd a = solver::chebyshev_operator_block(ell, N);
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        // at most 9 bands: offsets -1..7 would be 9; enforce the span
        if ((j - i < -1 || j - i > 7) && a(i, j) != 0.0) return 1.0;
      }
    }
  }
  return 0.0;
}

double bessel_l0_pi() {
  const auto sys = solver::assemble_bessel_tau(0.0, 0, 32, solver::TauVariant::convert_column);
  const double k = solver::solve_smallest_kappa(sys.pencil, 1)[0];
  return std::fabs(k - std::numbers::pi) / std::numbers::pi;
}

double bessel_l2_reference() {
  const auto sys = solver::assemble_bessel_tau(0.0, 2, 48, solver::TauVariant::convert_column);
  const double k = solver::solve_smallest_kappa(sys.pencil, 1)[0];
  return std::fabs(k - 5.7634591968945498) / 5.7634591968945498;
}

double figure1_preasymptotic_ordering() {
  // green < red < black strictly, where truncation error is resolvable
  const double ref2 = 5.7634591968945498;
  auto err = [&](const std::string& method, int ell, int N, double ref) {
    solver::Pencil p;
    if (method == "tau")
      p = solver::assemble_bessel_tau(0.0, ell, N, solver::TauVariant::convert_column).pencil;
    else if (method == "jw")
      p = solver::assemble_bessel_tau(-0.5, ell, N, solver::TauVariant::jones_worland).pencil;
    else
      p = solver::assemble_bessel_chebyshev(ell, N);
    return std::fabs(solver::solve_smallest_kappa(p, 1)[0] - ref) / ref;
  };
  for (int N : {8, 12}) {
    const double g = err("tau", 2, N, ref2), r = err("jw", 2, N, ref2), b = err("cheb", 2, N, ref2);
    if (!(g < r && r < b)) return 1.0;
  }
  // at high degree the alpha = 0 and Worland tau corrections trade places in
  // places; the Chebyshev handicap stays decisive
  const double ref64 = 72.199780933233055;
  for (int N : {12, 16}) {
    const double g = err("tau", 64, N, ref64), r = err("jw", 64, N, ref64),
                 b = err("cheb", 64, N, ref64);
    if (!(g < b && r < b)) return 1.0;
  }
  if (!(err("tau", 64, 16, ref64) < err("jw", 64, 16, ref64))) return 1.0;
  return 0.0;
}

}  // namespace

const std::vector<Invariant>& registry() {
  static const std::vector<Invariant> regs = {
      {"jacobi_orthogonality", 1e-12, true, jacobi_orthogonality},
      {"jacobi_endpoint", 1e-13, true, jacobi_endpoint},
      {"jacobi_appendix_relations", 1e-12, true, jacobi_relations_grid},
      {"jacobi_derivative_fd", 1e-6, true, jacobi_derivative_fd},
      {"jacobi_quadrature_weights", 1e-13, true, jacobi_weight_sum},
      {"radial_orthonormality", 1e-12, true, radial_orthonormality},
      {"radial_ctc_plus_rtr_identity", 1e-13, true, radial_ctc_plus_rtr},
      {"radial_factor_commutation", 1e-12, true, radial_factor_commutation},
      {"radial_degree_reduction", 1e-12, true, radial_degree_reduction},
      {"radial_band_structure", 0.5, true, radial_band_structure},
      {"radial_matsushima_composite", 1e-11, true, radial_matsushima_composite},
      {"radial_rmul_shifted_routes", 1e-12, true, radial_rtr_shifted},
      {"radial_restriction_dual_route", 1e-12, true, radial_restriction_dual_route},
      {"radial_restriction_growth", 1.0, false, radial_restriction_growth},
      {"radial_transform_roundtrip", 1e-13, true, radial_transform_roundtrip},
      {"radial_transform_two_coeffs", 1e-13, true, radial_transform_two_coeffs},
      {"radial_bessel_decay", 1.0, true, radial_bessel_decay},
      {"angular_orthonormality", 1e-12, true, angular_orthonormality},
      {"angular_conjugation", 1e-13, true, angular_conjugation},
      {"angular_cos_symmetry", 1e-14, true, angular_cos_symmetry},
      {"angular_sin_transpose", 1e-14, true, angular_sin_transpose},
      {"angular_cc_plus_ss_identity", 1e-13, true, angular_cc_plus_ss},
      {"angular_operator_commutation", 1e-13, true, angular_op_commutation},
      {"angular_k_commutator", 1e-12, true, angular_k_commutator},
      {"angular_gradient_fd", 1e-8, true, angular_gradient_fd},
      {"angular_pointwise_trig", 1e-13, true, angular_pointwise_trig},
      {"angular_swsh_roundtrip", 1e-12, true, angular_swsh_roundtrip},
      {"angular_parity", 1e-12, true, angular_parity},
      {"xi_identities", 1e-14, true, xi_identities},
      {"q_orthonormality", 1e-13, true, q_orthonormality},
      {"q_rank1_closed_form", 1e-15, true, q_rank1_closed_form},
      {"q_low_ell_masking", 0.5, true, q_low_ell_masking},
      {"generator_commutators", 1e-14, true, generator_commutators},
      {"contraction_identity", 1e-12, true, contraction_identity},
      {"degeneracy_trinomial", 0.5, true, degeneracy_trinomial},
      {"unitary_spin_transform", 1e-15, true, unitary_spin_transform},
      {"lambda_rank1_closed_form", 1e-12, true, lambda_rank1_closed_form},
      {"lambda_diagonalization", 1e-12, true, lambda_diagonalization},
      {"lambda_multiplicities", 1e-10, true, lambda_multiplicities},
      {"spin_ops_consistency", 1e-13, true, spin_ops_consistency},
      {"matrix_div_curl_zero", 1e-12, true, matrix_div_curl_zero},
      {"matrix_curl_grad_zero", 1e-12, true, matrix_curl_grad_zero},
      {"matrix_vector_laplacian", 1e-12, true, matrix_vector_laplacian},
      {"laplacian_factor_orders", 1e-12, true, laplacian_factor_orders},
      {"spec_calculus_identities", 1e-12, true, spec_calculus_identities},
      {"sphere_laplacian_forms", 0.5, true, sphere_laplacian_forms},
      {"projection_roundtrip_rank1", 1e-11, false, projection_roundtrip_rank1},
      {"projection_roundtrip_rank2", 1e-10, false, projection_roundtrip_rank2},
      {"projection_gradient_fd", 1e-6, false, projection_gradient_fd},
      {"tau_rowdrop_equivalence", 1e-13, true, tau_rowdrop_equivalence},
      {"tau_structure", 0.5, true, tau_structure},
      {"galerkin_boundary", 1e-12, true, galerkin_boundary},
      {"galerkin_tau_cross", 1e-10, false, galerkin_tau_cross},
      {"eigenvalues_real_positive", 0.5, true, eigenvalues_real_positive},
      {"chebyshev_band_structure", 0.5, true, chebyshev_structure},
      {"bessel_l0_pi", 1e-12, true, bessel_l0_pi},
      {"bessel_l2_reference", 1e-12, false, bessel_l2_reference},
      {"figure1_preasymptotic_ordering", 0.5, false, figure1_preasymptotic_ordering},
  };
  return regs;
}

std::vector<InvariantResult> run_invariants(bool quick_only) {
  std::vector<InvariantResult> results;
  for (const auto& inv : registry()) {
    if (quick_only && !inv.quick) continue;
    InvariantResult r;
    r.name = inv.name;
    r.tolerance = inv.tolerance;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.residual = inv.residual();
    } catch (const std::exception&) {
      r.residual = std::numeric_limits<double>::infinity();
    }
    const auto t1 = std::chrono::steady_clock::now();
    r.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    r.pass = r.residual <= r.tolerance;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace ballspec::verify
