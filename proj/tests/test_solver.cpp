#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "ballspec/solver.hpp"

using namespace ballspec;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kRoot2 = 5.7634591968945498;
constexpr double kRoot64 = 72.199780933233055;

int nnz(const VectorXd& v) {
  int c = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0.0) ++c;
  }
  return c;
}

}  // namespace

TEST_CASE("assembled blocks: shapes, bandwidths, closure columns") {
  const int N = 16;
  const auto sys = solver::assemble_bessel_tau(0.0, 2, N, solver::TauVariant::convert_column);
  CHECK(sys.pencil.A.rows() == N + 1);
  CHECK(sys.pencil.A.cols() == N + 1);

  // stiffness: strictly one superdiagonal; mass: three upper bands
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (j != i + 1) CHECK(sys.op_block(i, j) == 0.0);
      if (j < i || j > i + 2) CHECK(sys.mass_block(i, j) == 0.0);
    }
  }

  const auto drop = solver::assemble_bessel_tau(0.0, 2, N, solver::TauVariant::last_row_drop);
  const auto jw = solver::assemble_bessel_tau(-0.5, 2, N, solver::TauVariant::jones_worland);
  CHECK(nnz(drop.tau_column) == 1);
  CHECK(drop.tau_column(N - 1) == 1.0);
  CHECK(nnz(sys.tau_column) == 3);
  CHECK(nnz(jw.tau_column) == 4);

  CHECK_THROWS_AS(solver::assemble_bessel_tau(0.0, 2, N, solver::TauVariant::jones_worland),
                  std::invalid_argument);
  CHECK_THROWS_AS(solver::assemble_bessel_tau(-0.5, 0, N, solver::TauVariant::jones_worland),
                  std::invalid_argument);
  CHECK_THROWS_AS(solver::assemble_bessel_tau(0.0, 2, 3, solver::TauVariant::last_row_drop),
                  std::invalid_argument);
}

TEST_CASE("tau closure with the last-mode residual equals dropping the last equation") {
  for (const auto& [alpha, ell, N] :
       std::vector<std::tuple<double, int, int>>{{0.0, 2, 24}, {-0.5, 5, 32}}) {
    const auto tau = solver::assemble_bessel_tau(alpha, ell, N, solver::TauVariant::last_row_drop);
    const auto drop = solver::assemble_bessel_rowdrop(alpha, ell, N);
    const auto k1 = solver::solve_smallest_kappa(tau.pencil, 3);
    const auto k2 = solver::solve_smallest_kappa(drop, 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::fabs(k1[i] - k2[i]) <= 1e-13 * k2[i]);
    }
  }
}

TEST_CASE("fundamental wavenumbers against known roots") {
  // sin(kr)/(kr) vanishes first at pi
  {
    const auto sys = solver::assemble_bessel_tau(0.0, 0, 32, solver::TauVariant::convert_column);
    const double k = solver::solve_smallest_kappa(sys.pencil, 1)[0];
    CHECK(std::fabs(k - std::numbers::pi) <= 1e-12 * std::numbers::pi);
  }
  {
    const auto sys = solver::assemble_bessel_tau(0.0, 2, 64, solver::TauVariant::convert_column);
    const double k = solver::solve_smallest_kappa(sys.pencil, 1)[0];
    CHECK(std::fabs(k - kRoot2) <= 1e-12 * kRoot2);
  }
  {
    const auto sys = solver::assemble_bessel_tau(-0.5, 2, 48, solver::TauVariant::jones_worland);
    const double k = solver::solve_smallest_kappa(sys.pencil, 1)[0];
    CHECK(std::fabs(k - kRoot2) <= 1e-12 * kRoot2);
  }
  {
    const auto sys = solver::assemble_bessel_tau(0.0, 64, 128, solver::TauVariant::convert_column);
    const double k = solver::solve_smallest_kappa(sys.pencil, 1)[0];
    CHECK(std::fabs(k - kRoot64) <= 1e-10 * kRoot64);
  }
}

TEST_CASE("eigen-wavenumbers come out positive, ordered, finite") {
  const auto sys = solver::assemble_bessel_tau(0.0, 3, 40, solver::TauVariant::convert_column);
  const auto ks = solver::solve_smallest_kappa(sys.pencil, 5);
  for (size_t i = 0; i < ks.size(); ++i) {
    CHECK(ks[i] > 0.0);
    CHECK(std::isfinite(ks[i]));
    if (i > 0) CHECK(ks[i] > ks[i - 1]);
  }
  // requesting more modes than the truncation resolves is diagnosed
  CHECK_THROWS_WITH_AS(
      static_cast<void>(solver::solve_smallest_kappa(
          solver::assemble_bessel_tau(0.0, 2, 4, solver::TauVariant::last_row_drop).pencil, 40)),
      doctest::Contains("positive eigen-wavenumbers"), std::runtime_error);
}

TEST_CASE("recombined trial functions satisfy the boundary condition by construction") {
  for (const auto& [alpha, ell] :
       std::vector<std::pair<double, int>>{{0.0, 2}, {-0.5, 4}, {1.5, 0}}) {
    const int N = 20;
    const MatrixXd cols = solver::galerkin_trial_columns(alpha, ell, N);
    const Eigen::RowVectorXd bdry = radial::restriction_row({alpha, ell}, N);
    const Eigen::RowVectorXd vals = bdry * cols;
    const Eigen::RowVectorXd scale = bdry.cwiseAbs() * cols.cwiseAbs();
    for (int k = 0; k + 1 < N; ++k) {
      CHECK(std::fabs(vals(k)) <= 1e-12 * std::max(1.0, scale(k)));
    }
  }
}

TEST_CASE("recombined pencil bandwidth: one band below, two above") {
  const auto p = solver::assemble_bessel_galerkin(0.0, 2, 20);
  for (int i = 0; i < 19; ++i) {
    for (int j = 0; j < 19; ++j) {
      if (j < i - 1 || j > i + 2) {
        CHECK(p.A(i, j) == 0.0);
        CHECK(p.B(i, j) == 0.0);
      }
    }
  }
}

TEST_CASE("recombination and tau closure agree on the fundamental root") {
  const auto tau = solver::assemble_bessel_tau(0.0, 2, 64, solver::TauVariant::convert_column);
  const auto gal = solver::assemble_bessel_galerkin(0.0, 2, 64);
  const double k1 = solver::solve_smallest_kappa(tau.pencil, 1)[0];
  const double k2 = solver::solve_smallest_kappa(gal, 1)[0];
  CHECK(std::fabs(k1 - k2) <= 1e-10 * k1);
}

TEST_CASE("first-kind reference scheme") {
  // band span of the operator block stays within nine diagonals
  for (int ell : {2, 5}) {
    const MatrixXd a = solver::chebyshev_operator_block(ell, 24);
    for (int i = 0; i < 24; ++i) {
      for (int j = 0; j < 24; ++j) {
        if (j - i < -1 || j - i > 7) CHECK(a(i, j) == 0.0);
      }
    }
  }
  // converges to the same roots, even parity
  {
    const double k = solver::solve_smallest_kappa(solver::assemble_bessel_chebyshev(2, 40), 1)[0];
    CHECK(std::fabs(k - kRoot2) <= 1e-11 * kRoot2);
  }
  // odd parity: ell = 5 against a converged self-reference
  {
    const double ref = solver::reference_kappa(5, 128);
    const double k = solver::solve_smallest_kappa(solver::assemble_bessel_chebyshev(5, 48), 1)[0];
    CHECK(std::fabs(k - ref) <= 1e-10 * ref);
  }
  // visibly larger error than the tau closure while both still converge
  {
    const double kc = solver::solve_smallest_kappa(solver::assemble_bessel_chebyshev(2, 8), 1)[0];
    const double kt = solver::solve_smallest_kappa(
        solver::assemble_bessel_tau(0.0, 2, 8, solver::TauVariant::convert_column).pencil, 1)[0];
    CHECK(std::fabs(kc - kRoot2) > 100.0 * std::fabs(kt - kRoot2));
  }
}

TEST_CASE("sweep table: shape, determinism, worker-pool equivalence") {
  const std::vector<std::string> methods{"tau_alpha0", "chebyshev"};
  const std::vector<int> ells{2, 3};
  const std::vector<int> ns{8, 16};
  const auto rows = solver::error_sweep(methods, ells, ns, 1);
  CHECK(rows.size() == methods.size() * ells.size() * ns.size());

  const auto rows2 = solver::error_sweep(methods, ells, ns, 1);
  const auto rows4 = solver::error_sweep(methods, ells, ns, 4);
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].method == rows2[i].method);
    CHECK(rows[i].kappa_est == rows2[i].kappa_est);
    CHECK(rows[i].rel_error == rows2[i].rel_error);
    CHECK(rows[i].kappa_est == rows4[i].kappa_est);
    CHECK(rows[i].ell == rows4[i].ell);
    CHECK(rows[i].N == rows4[i].N);
  }
  CHECK_THROWS_AS(solver::error_sweep({"nope"}, {2}, {8}, 1), std::invalid_argument);
}

TEST_CASE("error ordering where truncation error is resolvable") {
  auto rel = [](const solver::Pencil& p, double ref) {
    return std::fabs(solver::solve_smallest_kappa(p, 1)[0] - ref) / ref;
  };
  for (int N : {8, 12}) {
    const double g = rel(
        solver::assemble_bessel_tau(0.0, 2, N, solver::TauVariant::convert_column).pencil, kRoot2);
    const double r = rel(
        solver::assemble_bessel_tau(-0.5, 2, N, solver::TauVariant::jones_worland).pencil, kRoot2);
    const double b = rel(solver::assemble_bessel_chebyshev(2, N), kRoot2);
    CHECK(g < r);
    CHECK(r < b);
  }
  // at high degree the first-kind scheme needs roughly ell modes before it
  // resolves the leading power at all
  for (int N : {12, 16, 24}) {
    const double g = rel(
        solver::assemble_bessel_tau(0.0, 64, N, solver::TauVariant::convert_column).pencil,
        kRoot64);
    const double b = rel(solver::assemble_bessel_chebyshev(64, N), kRoot64);
    CHECK(g < b);
  }
}

TEST_CASE("every method reaches deep convergence by N = 128 at ell = 2") {
  const std::vector<std::string> methods{"tau_alpha0", "jones_worland", "chebyshev", "galerkin"};
  const auto rows = solver::error_sweep(methods, {2}, {128}, 2);
  for (const auto& row : rows) CHECK(row.rel_error <= 1e-10);
}

TEST_CASE("optional equilibration keeps the spectrum") {
  const auto sys = solver::assemble_bessel_tau(0.0, 2, 32, solver::TauVariant::convert_column);
  const auto plain = solver::solve_smallest_kappa(sys.pencil, 3);
  const auto scaled = solver::solve_smallest_kappa(sys.pencil, 3, /*equilibrate=*/true);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::fabs(plain[i] - scaled[i]) <= 1e-11 * plain[i]);
  }
}
