#include "ballspec/solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace ballspec::solver {

std::string to_string(TauVariant v) {
  switch (v) {
    case TauVariant::last_row_drop:
      return "last_row_drop";
    case TauVariant::convert_column:
      return "convert_column";
    case TauVariant::jones_worland:
      return "jones_worland";
  }
  return "?";
}

namespace {

struct Blocks {
  Eigen::MatrixXd L, M;
  Eigen::RowVectorXd boundary;
};

Blocks bessel_blocks(double alpha, int ell, int N) {
  const radial::RadialBasisId base{alpha, ell};
  const auto dplus = radial::build_Dplus(base, N);
  const auto dminus = radial::build_Dminus({alpha + 1.0, ell + 1}, N);
  const auto c0 = radial::build_C(base, N);
  const auto c1 = radial::build_C({alpha + 1.0, ell}, N);
  Blocks b;
  b.L = dminus.compose(dplus).dense();
  b.M = c1.compose(c0).dense();
  b.boundary = radial::restriction_row(base, N);
  return b;
}

}  // namespace

AssembledSystem assemble_bessel_tau(double alpha, int ell, int N, TauVariant variant) {
  if (alpha <= -1.0 || ell < 0) throw std::invalid_argument("need alpha > -1 and ell >= 0");
  if (N < 4) throw std::invalid_argument("need N >= 4");
  if (variant == TauVariant::jones_worland) {
    if (alpha != -0.5) {
      throw std::invalid_argument("jones_worland closure requires alpha = -1/2");
    }
    if (ell < 1) {
      throw std::invalid_argument("jones_worland closure requires ell >= 1");
    }
  }

  AssembledSystem sys;
  sys.alpha = alpha;
  sys.ell = ell;
  sys.N = N;
  sys.variant = variant;
  const Blocks b = bessel_blocks(alpha, ell, N);
  sys.op_block = b.L;
  sys.mass_block = b.M;
  sys.boundary_row = b.boundary;

  Eigen::VectorXd last = Eigen::VectorXd::Zero(N);
  last(N - 1) = 1.0;
  switch (variant) {
    case TauVariant::last_row_drop:
      sys.tau_column = last;
      break;
    case TauVariant::convert_column:
      sys.tau_column = b.M * last;
      break;
    case TauVariant::jones_worland: {
      const auto r = radial::build_R({alpha, ell - 1}, N);
      sys.tau_column = b.M * r.dense() * last;
      break;
    }
  }

  sys.pencil.A = Eigen::MatrixXd::Zero(N + 1, N + 1);
  sys.pencil.B = Eigen::MatrixXd::Zero(N + 1, N + 1);
  sys.pencil.A.topLeftCorner(N, N) = b.L;
  sys.pencil.A.topRightCorner(N, 1) = sys.tau_column;
  sys.pencil.A.bottomLeftCorner(1, N) = b.boundary;
  sys.pencil.B.topLeftCorner(N, N) = b.M;
  return sys;
}

Pencil assemble_bessel_rowdrop(double alpha, int ell, int N) {
  const Blocks b = bessel_blocks(alpha, ell, N);
  Pencil p;
  p.A = Eigen::MatrixXd::Zero(N, N);
  p.B = Eigen::MatrixXd::Zero(N, N);
  p.A.topRows(N - 1) = b.L.topRows(N - 1);
  p.A.bottomRows(1) = b.boundary;
  p.B.topRows(N - 1) = b.M.topRows(N - 1);
  return p;
}

Eigen::MatrixXd galerkin_trial_columns(double alpha, int ell, int N) {
  // columns k = 0..N-2 of Ct, complete two-entry recombinations only
  const auto c = radial::build_C({alpha, ell}, N);
  return c.transposed().dense().leftCols(N - 1);
}

Pencil assemble_bessel_galerkin(double alpha, int ell, int N) {
  if (N < 4) throw std::invalid_argument("need N >= 4");
  const Blocks b = bessel_blocks(alpha, ell, N);
  const Eigen::MatrixXd ct = galerkin_trial_columns(alpha, ell, N);
  Pencil p;
  p.A = (b.L * ct).topRows(N - 1);
  p.B = (b.M * ct).topRows(N - 1);
  return p;
}

namespace {

// First/second-kind Chebyshev machinery in z = 2r^2 - 1, truncated at N.
// All matrices map coefficient vectors; bands follow the closed forms.
Eigen::MatrixXd cheb_d1(int N) {  // T -> U derivative
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(N, N);
  for (int n = 1; n < N; ++n) d(n - 1, n) = n;
  return d;
}

Eigen::MatrixXd cheb_d2(int N) {  // T -> C^(2) second derivative
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(N, N);
  for (int n = 2; n < N; ++n) d(n - 2, n) = 2.0 * n;
  return d;
}

Eigen::MatrixXd cheb_s0(int N) {  // T -> U conversion
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(N, N);
  s(0, 0) = 1.0;
  for (int n = 1; n < N; ++n) s(n, n) = 0.5;
  for (int n = 2; n < N; ++n) s(n - 2, n) = -0.5;
  return s;
}

Eigen::MatrixXd cheb_s1(int N) {  // U -> C^(2) conversion
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(N, N);
  for (int n = 0; n < N; ++n) s(n, n) = 1.0 / (n + 1.0);
  for (int n = 2; n < N; ++n) s(n - 2, n) = -1.0 / (n + 1.0);
  return s;
}

Eigen::MatrixXd cheb_z2(int N) {  // multiplication by z in C^(2)
  Eigen::MatrixXd mz = Eigen::MatrixXd::Zero(N, N);
  for (int n = 0; n + 1 < N; ++n) mz(n + 1, n) = (n + 1.0) / (2.0 * (n + 2.0));
  for (int n = 1; n < N; ++n) mz(n - 1, n) = (n + 3.0) / (2.0 * (n + 2.0));
  return mz;
}

}  // namespace

Eigen::MatrixXd chebyshev_operator_block(int ell, int N) {
  const int gamma = ell % 2;
  const Eigen::MatrixXd d1 = cheb_d1(N), d2 = cheb_d2(N), s0 = cheb_s0(N), s1 = cheb_s1(N);
  const Eigen::MatrixXd m1z = Eigen::MatrixXd::Identity(N, N) + cheb_z2(N);
  // theta(theta+1) - l(l+1) with theta = r d/dr, in the C^(2) test basis:
  // 4 (1+z)^2 d^2/dz^2 + (4 gamma + 6)(1+z) d/dz + gamma(gamma+1) - l(l+1)
  return 4.0 * m1z * m1z * d2 + (4.0 * gamma + 6.0) * m1z * s1 * d1 +
         (gamma * (gamma + 1.0) - static_cast<double>(ell) * (ell + 1.0)) * s1 * s0;
}

Pencil assemble_bessel_chebyshev(int ell, int N) {
  if (ell < 0) throw std::invalid_argument("need ell >= 0");
  if (N < 4) throw std::invalid_argument("need N >= 4");
  const Eigen::MatrixXd a2 = chebyshev_operator_block(ell, N);
  const Eigen::MatrixXd m1z = Eigen::MatrixXd::Identity(N, N) + cheb_z2(N);
  const Eigen::MatrixXd b2 = 0.5 * m1z * cheb_s1(N) * cheb_s0(N);  // r^2 = (1+z)/2
  Pencil p;
  p.A = a2;
  p.B = b2;
  // Dirichlet closure: f(1) = sum_n F_n (T_n(1) = 1), replacing the last row
  p.A.row(N - 1).setOnes();
  p.B.row(N - 1).setZero();
  return p;
}

std::vector<double> solve_smallest_kappa(const Pencil& pencil, int count, bool equilibrate) {
  if (pencil.A.rows() != pencil.A.cols() || pencil.B.rows() != pencil.B.cols() ||
      pencil.A.rows() != pencil.B.rows()) {
    throw std::invalid_argument("pencil must be square with matching shapes");
  }
  Eigen::MatrixXd a = pencil.A, b = pencil.B;
  if (equilibrate) {
    // Dr (A,B) Dc keeps the spectrum; scale rows then columns to unit
    // inf-norm of |A| + |B|
    const Eigen::Index n = a.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double s = a.row(i).cwiseAbs().maxCoeff() + b.row(i).cwiseAbs().maxCoeff();
      if (s > 0.0) {
        a.row(i) /= s;
        b.row(i) /= s;
      }
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double s = a.col(j).cwiseAbs().maxCoeff() + b.col(j).cwiseAbs().maxCoeff();
      if (s > 0.0) {
        a.col(j) /= s;
        b.col(j) /= s;
      }
    }
  }
  Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges;
  ges.compute(a, b, false);
  if (ges.info() != Eigen::Success) {
    throw std::runtime_error("generalized eigen-decomposition did not converge");
  }
  const auto alphas = ges.alphas();
  const auto betas = ges.betas();
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1.0);
  std::vector<double> kappas;
  for (Eigen::Index i = 0; i < alphas.size(); ++i) {
    if (std::abs(betas(i)) < 1e-12 * scale) continue;  // infinite eigenvalue
    const std::complex<double> lambda = alphas(i) / betas(i);
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) continue;
    if (std::abs(lambda.imag()) > 1e-10 * std::abs(lambda)) continue;
    const double k2 = -lambda.real();
    if (k2 <= 0.0) continue;
    kappas.push_back(std::sqrt(k2));
  }
  std::sort(kappas.begin(), kappas.end());
  if (static_cast<int>(kappas.size()) < count) {
    throw std::runtime_error("found only " + std::to_string(kappas.size()) +
                             " positive eigen-wavenumbers of " + std::to_string(count) +
                             " requested");
  }
  kappas.resize(static_cast<size_t>(count));
  return kappas;
}

double reference_kappa(int ell, int n_ref) {
  if (ell == 2) return 5.7634591968945498;
  if (ell == 64) return 72.199780933233055;
  const auto sys = assemble_bessel_tau(0.0, ell, n_ref, TauVariant::convert_column);
  return solve_smallest_kappa(sys.pencil, 1)[0];
}

namespace {

SweepRow run_cell(const std::string& method, int ell, int N, double kappa_ref) {
  SweepRow row;
  row.method = method;
  row.ell = ell;
  row.N = N;
  row.kappa_ref = kappa_ref;
  row.tau_variant = "";
  const auto t0 = std::chrono::steady_clock::now();
  Pencil pencil;
  if (method == "tau_alpha0") {
    row.alpha = 0.0;
    row.tau_variant = to_string(TauVariant::convert_column);
    pencil = assemble_bessel_tau(0.0, ell, N, TauVariant::convert_column).pencil;
  } else if (method == "jones_worland") {
    row.alpha = -0.5;
    row.tau_variant = to_string(TauVariant::jones_worland);
    pencil = assemble_bessel_tau(-0.5, ell, N, TauVariant::jones_worland).pencil;
  } else if (method == "chebyshev") {
    row.alpha = -0.5;  // Chebyshev weight
    pencil = assemble_bessel_chebyshev(ell, N);
  } else if (method == "galerkin") {
    row.alpha = 0.0;
    pencil = assemble_bessel_galerkin(0.0, ell, N);
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  row.kappa_est = solve_smallest_kappa(pencil, 1)[0];
  const auto t1 = std::chrono::steady_clock::now();
  row.rel_error = std::fabs(row.kappa_est - kappa_ref) / kappa_ref;
  row.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return row;
}

}  // namespace

std::vector<SweepRow> error_sweep(const std::vector<std::string>& methods,
                                  const std::vector<int>& ells,
                                  const std::vector<int>& Ns, int jobs) {
  int n_max = 0;
  for (int n : Ns) n_max = std::max(n_max, n);
  std::vector<std::pair<int, double>> refs;
  for (int ell : ells) refs.emplace_back(ell, reference_kappa(ell, 2 * n_max));

  struct Cell {
    std::string method;
    int ell;
    int N;
    double ref;
  };
  std::vector<Cell> cells;
  for (const auto& method : methods) {
    for (size_t li = 0; li < ells.size(); ++li) {
      for (int n : Ns) cells.push_back({method, ells[li], n, refs[li].second});
    }
  }

  std::vector<SweepRow> rows(cells.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < cells.size(); ++i) {
      rows[i] = run_cell(cells[i].method, cells[i].ell, cells[i].N, cells[i].ref);
    }
    return rows;
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= cells.size()) break;
      rows[i] = run_cell(cells[i].method, cells[i].ell, cells[i].N, cells[i].ref);
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min<int>(jobs, static_cast<int>(cells.size()));
  pool.reserve(static_cast<size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace ballspec::solver
