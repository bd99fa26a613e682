#include "ballspec/tensor.hpp"

#include <cmath>
#include <stdexcept>

#include "ballspec/angular.hpp"

namespace ballspec::tensor {

namespace {

int ipow3(int r) {
  int v = 1;
  for (int i = 0; i < r; ++i) v *= 3;
  return v;
}

using cd = std::complex<double>;

}  // namespace

radial::RadialBasisId TensorFieldSpec::basis_of(const ComponentKey& key) const {
  const int abar = reg::MultiIndex::from_flat(key.a_flat, rank).spin_weight();
  return {alpha, key.ell + abar};
}

bool TensorFieldSpec::component_exists(int ell, int rank, int a_flat) {
  const reg::MultiIndex a = reg::MultiIndex::from_flat(a_flat, rank);
  // Walk the recursion from the innermost suffix outward: attaching index
  // a_i onto a tail with accumulated weight needs (ell + tail >= 1 or a_i = +1).
  int tail = 0;
  for (int i = rank - 1; i >= 0; --i) {
    const int ai = a.entry(i);
    if (!(ai == 1 || ell + tail >= 1)) return false;
    tail += ai;
  }
  return true;
}

double TensorFieldSpec::max_abs() const {
  double m = 0.0;
  for (const auto& [k, v] : entries) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

double max_difference(const TensorFieldSpec& a, const TensorFieldSpec& b) {
  double m = 0.0;
  auto scan = [&](const TensorFieldSpec& x, const TensorFieldSpec& y) {
    for (const auto& [k, v] : x.entries) {
      const auto it = y.entries.find(k);
      if (it == y.entries.end()) {
        m = std::max(m, v.cwiseAbs().maxCoeff());
      } else {
        m = std::max(m, (v - it->second).cwiseAbs().maxCoeff());
      }
    }
  };
  scan(a, b);
  for (const auto& [k, v] : b.entries) {
    if (a.entries.find(k) == a.entries.end()) m = std::max(m, v.cwiseAbs().maxCoeff());
  }
  return m;
}

namespace {

void accumulate(TensorFieldSpec& out, const ComponentKey& key, const Eigen::VectorXcd& v) {
  auto [it, inserted] = out.entries.try_emplace(key, v);
  if (!inserted) it->second += v;
}

}  // namespace

TensorFieldSpec gradient(const TensorFieldSpec& t) {
  TensorFieldSpec out;
  out.rank = t.rank + 1;
  out.alpha = t.alpha + 1.0;
  out.N = t.N;
  const int dim = ipow3(t.rank);
  for (const auto& [key, vec] : t.entries) {
    const int bbar = reg::MultiIndex::from_flat(key.a_flat, t.rank).spin_weight();
    const int lb = key.ell + bbar;
    for (int a = -1; a <= 1; a += 2) {
      if (a == -1 && lb < 1) continue;  // xi vanishes and the target is masked
      const radial::RadialBasisId in{t.alpha, lb};
      const radial::BandedOperator op =
          a == 1 ? radial::build_Dplus(in, t.N) : radial::build_Dminus(in, t.N);
      const ComponentKey nk{key.ell, key.m, (a + 1) * dim + key.a_flat};
      accumulate(out, nk, reg::xi(a, lb) * op.apply(vec));
    }
  }
  return out;
}

TensorFieldSpec divergence(const TensorFieldSpec& t) {
  if (t.rank < 1) throw std::invalid_argument("divergence needs rank >= 1");
  TensorFieldSpec out;
  out.rank = t.rank - 1;
  out.alpha = t.alpha + 1.0;
  out.N = t.N;
  const int dim = ipow3(t.rank - 1);
  for (const auto& [key, vec] : t.entries) {
    const int a = key.a_flat / dim - 1;
    const int jb = key.a_flat % dim;
    if (a == 0) continue;  // xi^0 = 0
    const int bbar = reg::MultiIndex::from_flat(jb, t.rank - 1).spin_weight();
    const int lb = key.ell + bbar;
    const radial::RadialBasisId in{t.alpha, lb + a};
    const radial::BandedOperator op =
        a == 1 ? radial::build_Dminus(in, t.N) : radial::build_Dplus(in, t.N);
    accumulate(out, ComponentKey{key.ell, key.m, jb}, reg::xi(a, lb) * op.apply(vec));
  }
  return out;
}

TensorFieldSpec curl(const TensorFieldSpec& v) {
  if (v.rank != 1) throw std::invalid_argument("curl is defined for rank-1 fields");
  TensorFieldSpec out;
  out.rank = 1;
  out.alpha = v.alpha + 1.0;
  out.N = v.N;
  const cd i1(0.0, 1.0);
  for (const auto& [key, vec] : v.entries) {
    const int ell = key.ell;
    const int a = key.a_flat - 1;
    if (a == 0) {
      if (ell >= 1) {
        const auto dm = radial::build_Dminus({v.alpha, ell}, v.N);
        accumulate(out, {ell, key.m, 0}, -i1 * reg::xi(1, ell) * dm.apply(vec));
      }
      if (reg::xi(-1, ell) != 0.0) {
        const auto dp = radial::build_Dplus({v.alpha, ell}, v.N);
        accumulate(out, {ell, key.m, 2}, i1 * reg::xi(-1, ell) * dp.apply(vec));
      }
    } else if (a == 1) {
      const auto dm = radial::build_Dminus({v.alpha, ell + 1}, v.N);
      accumulate(out, {ell, key.m, 1}, i1 * reg::xi(-1, ell) * dm.apply(vec));
    } else {
      const auto dp = radial::build_Dplus({v.alpha, ell - 1}, v.N);
      accumulate(out, {ell, key.m, 1}, -i1 * reg::xi(1, ell) * dp.apply(vec));
    }
  }
  return out;
}

TensorFieldSpec laplacian(const TensorFieldSpec& t, FactorOrder order) {
  TensorFieldSpec out;
  out.rank = t.rank;
  out.alpha = t.alpha + 2.0;
  out.N = t.N;
  for (const auto& [key, vec] : t.entries) {
    const int L = key.ell + reg::MultiIndex::from_flat(key.a_flat, t.rank).spin_weight();
    Eigen::VectorXcd y;
    if (order == FactorOrder::MinusPlus) {
      const auto dp = radial::build_Dplus({t.alpha, L}, t.N);
      const auto dm = radial::build_Dminus({t.alpha + 1.0, L + 1}, t.N);
      y = dm.apply(dp.apply(vec).eval());
    } else {
      if (L < 1) {
        throw std::invalid_argument(
            "plus-minus factor order undefined on a component with ell+abar = 0");
      }
      const auto dm = radial::build_Dminus({t.alpha, L}, t.N);
      const auto dp = radial::build_Dplus({t.alpha + 1.0, L - 1}, t.N);
      y = dp.apply(dm.apply(vec).eval());
    }
    out.entries.emplace(key, std::move(y));
  }
  return out;
}

SpinGradOps spin_gradient_ops(int rank, int ell) {
  const int dim = ipow3(rank);
  SpinGradOps ops;
  ops.gr = Eigen::MatrixXd::Zero(3 * dim, dim);
  ops.gm = Eigen::MatrixXd::Zero(3 * dim, dim);
  ops.gr.block(dim, 0, dim, dim).setIdentity();

  Eigen::MatrixXd jdag[3];
  if (rank == 0) {
    jdag[0] = jdag[2] = Eigen::MatrixXd::Zero(1, 1);
  } else {
    const reg::SpinGeneratorSet g = reg::build_generators(rank);
    jdag[0] = g.jplus;   // adjoint of J_-
    jdag[2] = g.jminus;  // adjoint of J_+
  }
  for (int si = 0; si < 3; si += 2) {
    const int sigma = si - 1;
    Eigen::MatrixXd m = -(sigma / std::sqrt(2.0)) * jdag[si];
    for (int t = 0; t < dim; ++t) {
      const int tbar = reg::MultiIndex::from_flat(t, rank).spin_weight();
      m(t, t) += angular::k_wavenumber(sigma, ell, tbar);
    }
    ops.gm.block(si * dim, 0, dim, dim) = m;
  }
  return ops;
}

SpinDivOps spin_divergence_ops(int rank, int ell) {
  const int dim = ipow3(rank);
  SpinDivOps ops;
  ops.dr = Eigen::MatrixXd::Zero(dim, 3 * dim);
  ops.dm = Eigen::MatrixXd::Zero(dim, 3 * dim);
  ops.dr.block(0, dim, dim, dim).setIdentity();

  const reg::SpinGeneratorSet g = reg::build_generators(rank + 1);
  for (int mu = -1; mu <= 1; mu += 2) {
    const Eigen::MatrixXd& jdag = (mu == 1) ? g.jminus : g.jplus;
    for (int t = 0; t < dim; ++t) {
      const int tbar = reg::MultiIndex::from_flat(t, rank).spin_weight();
      const int col = (-mu + 1) * dim + t;
      ops.dm(t, col) += angular::k_wavenumber(mu, ell, tbar - mu);
      ops.dm.row(t) -= (mu / std::sqrt(2.0)) * jdag.row(col);
    }
  }
  return ops;
}

LambdaMatrix build_lambda(int rank, int ell) {
  if (rank < 0 || ell < 0) throw std::invalid_argument("build_lambda needs rank, ell >= 0");
  const SpinGradOps go = spin_gradient_ops(rank, ell);
  const SpinDivOps dv = spin_divergence_ops(rank, ell);
  LambdaMatrix lam;
  lam.rank = rank;
  lam.ell = ell;
  lam.matrix = (dv.dr - dv.dm) * go.gm;
  return lam;
}

std::pair<double, double> sphere_laplacian_check(const reg::MultiIndex& sigma, int ell) {
  const int s = sigma.spin_weight();
  if (ell < std::abs(s)) throw std::invalid_argument("ell below |spin weight|");
  const double from_k = angular::k_wavenumber(-1, ell, s + 1) * angular::k_wavenumber(1, ell, s) +
                        angular::k_wavenumber(1, ell, s - 1) * angular::k_wavenumber(-1, ell, s);
  const double rough = -static_cast<double>(ell) * (ell + 1.0) + static_cast<double>(s) * s;
  if (std::fabs(from_k - rough) > 1e-12 * std::max(1.0, std::fabs(rough))) {
    throw std::logic_error("k-wavenumber assembly of the rough Laplacian disagrees");
  }
  const double restricted =
      -(static_cast<double>(ell) * (ell + 1.0) - static_cast<double>(s) * s + sigma.rank());
  return {rough, restricted};
}

namespace {

Eigen::MatrixXcd zero_mat(int r, int c) { return Eigen::MatrixXcd::Zero(r, c); }

}  // namespace

Eigen::MatrixXcd gradient_matrix(double alpha, int ell, int N) {
  Eigen::MatrixXcd g = zero_mat(3 * N, N);
  if (ell >= 1) {
    g.block(0, 0, N, N) =
        reg::xi(-1, ell) * radial::build_Dminus({alpha, ell}, N).dense();
  }
  g.block(2 * N, 0, N, N) = reg::xi(1, ell) * radial::build_Dplus({alpha, ell}, N).dense();
  return g;
}

Eigen::MatrixXcd divergence_matrix(double alpha, int ell, int N) {
  Eigen::MatrixXcd d = zero_mat(N, 3 * N);
  if (ell >= 1) {
    d.block(0, 0, N, N) =
        reg::xi(-1, ell) * radial::build_Dplus({alpha, ell - 1}, N).dense();
  }
  d.block(0, 2 * N, N, N) = reg::xi(1, ell) * radial::build_Dminus({alpha, ell + 1}, N).dense();
  return d;
}

Eigen::MatrixXcd curl_matrix(double alpha, int ell, int N) {
  const cd i1(0.0, 1.0);
  Eigen::MatrixXcd c = zero_mat(3 * N, 3 * N);
  if (ell >= 1) {
    c.block(0, N, N, N) = -i1 * reg::xi(1, ell) * radial::build_Dminus({alpha, ell}, N).dense();
    c.block(N, 0, N, N) = -i1 * reg::xi(1, ell) * radial::build_Dplus({alpha, ell - 1}, N).dense();
    c.block(2 * N, N, N, N) = i1 * reg::xi(-1, ell) * radial::build_Dplus({alpha, ell}, N).dense();
  }
  c.block(N, 2 * N, N, N) = i1 * reg::xi(-1, ell) * radial::build_Dminus({alpha, ell + 1}, N).dense();
  return c;
}

Eigen::MatrixXcd laplacian_matrix(double alpha, int ell, int N) {
  Eigen::MatrixXcd l = zero_mat(3 * N, 3 * N);
  for (int a = -1; a <= 1; ++a) {
    const int L = ell + a;
    if (L < 0 || (a == -1 && ell < 1)) continue;
    const auto dp = radial::build_Dplus({alpha, L}, N);
    const auto dm = radial::build_Dminus({alpha + 1.0, L + 1}, N);
    l.block((a + 1) * N, (a + 1) * N, N, N) = dm.compose(dp).dense();
  }
  return l;
}

GridSpec make_grid_spec(int rank, double alpha, int Lmax, int N) {
  GridSpec g;
  g.rank = rank;
  g.alpha = alpha;
  g.Lmax = Lmax;
  g.N = N;
  g.n_theta = Lmax + 1;
  g.n_r = N + Lmax / 2 + rank + 2;
  return g;
}

namespace {

struct GridTools {
  angular::ThetaGrid theta;
  radial::RadialQuadrature rquad;
  reg::SpinBasisTransform basis;  // rank >= 1 only
};

GridTools make_tools(const GridSpec& g) {
  GridTools t;
  t.theta = angular::gauss_legendre_theta(g.n_theta);
  t.rquad = radial::radial_quadrature({g.alpha, 0}, g.n_r);
  if (g.rank >= 1) t.basis = reg::spin_basis_transform(g.rank);
  return t;
}

}  // namespace

TensorFieldSpec project_tensor(const TensorGrid& grid) {
  const GridSpec& g = grid.spec;
  const int dim = ipow3(g.rank);
  if (static_cast<int>(grid.values.size()) != 2 * g.Lmax + 1) {
    throw std::invalid_argument("grid must hold azimuthal orders -Lmax..Lmax");
  }
  const GridTools tools = make_tools(g);
  if (static_cast<int>(tools.theta.theta.size()) < g.Lmax + 1) {
    throw std::invalid_argument("theta grid too small");
  }

  TensorFieldSpec spec;
  spec.rank = g.rank;
  spec.alpha = g.alpha;
  spec.N = g.N;

  for (int m = -g.Lmax; m <= g.Lmax; ++m) {
    const auto& comps = grid.values[static_cast<size_t>(m + g.Lmax)];
    if (static_cast<int>(comps.size()) != dim) {
      throw std::invalid_argument("component count does not match rank");
    }
    // coordinate -> spin at every grid point
    std::vector<Eigen::MatrixXcd> spin(static_cast<size_t>(dim));
    if (g.rank == 0) {
      spin[0] = comps[0];
    } else {
      const Eigen::MatrixXcd ubar = tools.basis.u.conjugate();
      for (int s = 0; s < dim; ++s) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(g.n_theta, g.n_r);
        for (int c = 0; c < dim; ++c) {
          if (ubar(s, c) != cd(0.0, 0.0)) acc += ubar(s, c) * comps[static_cast<size_t>(c)];
        }
        spin[static_cast<size_t>(s)] = std::move(acc);
      }
    }
    // theta -> degree, per spin component and radial node
    // harm[s] has rows ell = lmin(s)..Lmax
    std::vector<Eigen::MatrixXcd> harm(static_cast<size_t>(dim));
    std::vector<int> lmin_s(static_cast<size_t>(dim));
    for (int s = 0; s < dim; ++s) {
      const int sbar = reg::MultiIndex::from_flat(s, g.rank).spin_weight();
      const int lmin = angular::ell_min(m, sbar);
      lmin_s[static_cast<size_t>(s)] = lmin;
      if (lmin > g.Lmax) continue;
      Eigen::MatrixXcd h(g.Lmax - lmin + 1, g.n_r);
      for (int j = 0; j < g.n_r; ++j) {
        h.col(j) = angular::swsh_forward(m, sbar, spin[static_cast<size_t>(s)].col(j),
                                         tools.theta, g.Lmax);
      }
      harm[static_cast<size_t>(s)] = std::move(h);
    }
    // regularity rotation and radial projection
    for (int ell = std::abs(m); ell <= g.Lmax; ++ell) {
      const reg::QRotation qr = reg::build_Q(ell, g.rank);
      for (int a = 0; a < dim; ++a) {
        if (!qr.valid_cols[static_cast<size_t>(a)]) continue;
        Eigen::VectorXcd radial_samples = Eigen::VectorXcd::Zero(g.n_r);
        bool any = false;
        for (int s = 0; s < dim; ++s) {
          const double q = qr.matrix(s, a);
          if (q == 0.0) continue;
          const int lmin = lmin_s[static_cast<size_t>(s)];
          if (ell < lmin) continue;
          radial_samples += q * harm[static_cast<size_t>(s)].row(ell - lmin).transpose();
          any = true;
        }
        if (!any) continue;
        const int abar = reg::MultiIndex::from_flat(a, g.rank).spin_weight();
        const radial::RadialBasisId rb{g.alpha, ell + abar};
        Eigen::VectorXcd coeffs = radial::transform_forward(radial_samples, tools.rquad, rb, g.N);
        if (coeffs.cwiseAbs().maxCoeff() > 0.0) {
          spec.entries.emplace(ComponentKey{ell, m, a}, std::move(coeffs));
        }
      }
    }
  }
  return spec;
}

TensorGrid synthesize_tensor(const TensorFieldSpec& spec, const GridSpec& gspec) {
  if (spec.rank != gspec.rank || spec.N > gspec.N || spec.alpha != gspec.alpha) {
    throw std::invalid_argument("grid spec does not match field spec");
  }
  const int dim = ipow3(gspec.rank);
  const GridTools tools = make_tools(gspec);

  TensorGrid grid;
  grid.spec = gspec;
  grid.values.assign(static_cast<size_t>(2 * gspec.Lmax + 1),
                     std::vector<Eigen::MatrixXcd>(
                         static_cast<size_t>(dim),
                         Eigen::MatrixXcd::Zero(gspec.n_theta, gspec.n_r)));

  // group keys per (m, ell)
  for (int m = -gspec.Lmax; m <= gspec.Lmax; ++m) {
    std::vector<Eigen::MatrixXcd> harm(static_cast<size_t>(dim));
    std::vector<int> lmin_s(static_cast<size_t>(dim));
    for (int s = 0; s < dim; ++s) {
      const int sbar = reg::MultiIndex::from_flat(s, gspec.rank).spin_weight();
      lmin_s[static_cast<size_t>(s)] = angular::ell_min(m, sbar);
      if (lmin_s[static_cast<size_t>(s)] <= gspec.Lmax) {
        harm[static_cast<size_t>(s)] =
            Eigen::MatrixXcd::Zero(gspec.Lmax - lmin_s[static_cast<size_t>(s)] + 1, gspec.n_r);
      }
    }
    bool any_m = false;
    for (int ell = std::abs(m); ell <= gspec.Lmax; ++ell) {
      reg::QRotation qr;
      bool have_q = false;
      for (int a = 0; a < dim; ++a) {
        const auto it = spec.entries.find(ComponentKey{ell, m, a});
        if (it == spec.entries.end()) continue;
        if (!have_q) {
          qr = reg::build_Q(ell, gspec.rank);
          have_q = true;
        }
        const int abar = reg::MultiIndex::from_flat(a, gspec.rank).spin_weight();
        const radial::RadialBasisId rb{gspec.alpha, ell + abar};
        const Eigen::VectorXcd samples = radial::transform_backward(it->second, rb, tools.rquad.r);
        for (int s = 0; s < dim; ++s) {
          const double q = qr.matrix(s, a);
          if (q == 0.0 || ell < lmin_s[static_cast<size_t>(s)]) continue;
          harm[static_cast<size_t>(s)].row(ell - lmin_s[static_cast<size_t>(s)]) +=
              q * samples.transpose();
        }
        any_m = true;
      }
    }
    if (!any_m) continue;
    // degree -> theta, then spin -> coordinate
    std::vector<Eigen::MatrixXcd> spin(static_cast<size_t>(dim));
    for (int s = 0; s < dim; ++s) {
      spin[static_cast<size_t>(s)] = Eigen::MatrixXcd::Zero(gspec.n_theta, gspec.n_r);
      if (lmin_s[static_cast<size_t>(s)] > gspec.Lmax) continue;
      const int sbar = reg::MultiIndex::from_flat(s, gspec.rank).spin_weight();
      for (int j = 0; j < gspec.n_r; ++j) {
        spin[static_cast<size_t>(s)].col(j) = angular::swsh_backward(
            m, sbar, harm[static_cast<size_t>(s)].col(j), tools.theta, gspec.Lmax);
      }
    }
    auto& out = grid.values[static_cast<size_t>(m + gspec.Lmax)];
    if (gspec.rank == 0) {
      out[0] = spin[0];
    } else {
      const Eigen::MatrixXcd ut = tools.basis.u.transpose();
      for (int c = 0; c < dim; ++c) {
        for (int s = 0; s < dim; ++s) {
          if (ut(c, s) != cd(0.0, 0.0)) out[static_cast<size_t>(c)] += ut(c, s) * spin[static_cast<size_t>(s)];
        }
      }
    }
  }
  return grid;
}

Eigen::VectorXcd eval_spin_components(const TensorFieldSpec& spec, int m,
                                      double theta, double r) {
  const int dim = ipow3(spec.rank);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (const auto& [key, coeffs] : spec.entries) {
    if (key.m != m) continue;
    const reg::QRotation qr = reg::build_Q(key.ell, spec.rank);
    const radial::RadialBasisId rb = spec.basis_of(key);
    const Eigen::VectorXcd val = radial::transform_backward(coeffs, rb, {r});
    for (int s = 0; s < dim; ++s) {
      const double q = qr.matrix(s, key.a_flat);
      if (q == 0.0) continue;
      const int sbar = reg::MultiIndex::from_flat(s, spec.rank).spin_weight();
      if (key.ell < angular::ell_min(m, sbar)) continue;
      out(s) += q * val(0) * angular::eval_Ys_theta({key.ell, m, sbar}, theta);
    }
  }
  return out;
}

}  // namespace ballspec::tensor
