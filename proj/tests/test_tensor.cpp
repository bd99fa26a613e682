#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "ballspec/tensor.hpp"

using namespace ballspec;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using cd = std::complex<double>;

namespace {

tensor::TensorFieldSpec random_spec(int rank, int Lmax, int N, unsigned seed,
                                    bool exclude_origin_degenerate = false) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  tensor::TensorFieldSpec spec;
  spec.rank = rank;
  spec.alpha = 0.0;
  spec.N = N;
  const int dim = static_cast<int>(std::pow(3, rank));
  for (int ell = 0; ell <= Lmax; ++ell) {
    for (int m = -ell; m <= ell; ++m) {
      for (int a = 0; a < dim; ++a) {
        if (!tensor::TensorFieldSpec::component_exists(ell, rank, a)) continue;
        if (exclude_origin_degenerate &&
            ell + reg::MultiIndex::from_flat(a, rank).spin_weight() < 1) {
          continue;
        }
        VectorXcd v(N);
        for (int n = 0; n < N; ++n) v(n) = cd(unit(rng), unit(rng));
        spec.entries.emplace(tensor::ComponentKey{ell, m, a}, std::move(v));
      }
    }
  }
  return spec;
}

}  // namespace

TEST_CASE("gradient of a degree-zero scalar has only the raising component") {
  tensor::TensorFieldSpec f;
  f.rank = 0;
  f.alpha = 0.0;
  f.N = 8;
  VectorXcd coeffs = VectorXcd::Zero(8);
  coeffs(0) = 1.5;
  coeffs(1) = -0.25;
  f.entries.emplace(tensor::ComponentKey{0, 0, 0}, coeffs);

  const auto g = tensor::gradient(f);
  CHECK(g.rank == 1);
  CHECK(g.alpha == 1.0);
  REQUIRE(g.entries.size() == 1);
  const auto& [key, val] = *g.entries.begin();
  CHECK(key.a_flat == 2);
  const VectorXcd want = radial::build_Dplus({0.0, 0}, 8).apply(coeffs);
  CHECK((val - want).cwiseAbs().maxCoeff() == 0.0);  // xi^+ at ell=0 is 1
}

TEST_CASE("radial profile of the gradient of 1-r^2") {
  tensor::TensorFieldSpec f;
  f.rank = 0;
  f.alpha = 0.0;
  f.N = 8;
  const radial::RadialBasisId b{0.0, 0};
  const auto quad = radial::radial_quadrature(b, 8);
  VectorXcd samples(static_cast<Eigen::Index>(quad.r.size()));
  for (size_t j = 0; j < quad.r.size(); ++j) samples(static_cast<Eigen::Index>(j)) = 1.0 - quad.r[j] * quad.r[j];
  f.entries.emplace(tensor::ComponentKey{0, 0, 0},
                    radial::transform_forward(samples, quad, b, 8));
  const auto g = tensor::gradient(f);
  const auto it = g.entries.find({0, 0, 2});
  REQUIRE(it != g.entries.end());
  const std::vector<double> pts{0.2, 0.5, 0.9};
  const VectorXcd vals = radial::transform_backward(it->second, {1.0, 1}, pts);
  for (size_t j = 0; j < pts.size(); ++j) {
    CHECK(vals(static_cast<Eigen::Index>(j)).real() == doctest::Approx(-2.0 * pts[j]).epsilon(1e-13));
    CHECK(std::fabs(vals(static_cast<Eigen::Index>(j)).imag()) < 1e-15);
  }
}

TEST_CASE("scalar chain: divergence of gradient equals the factored laplacian") {
  const auto f = random_spec(0, 4, 12, 101);
  const auto dg = tensor::divergence(tensor::gradient(f));
  const auto lap = tensor::laplacian(f);
  CHECK(tensor::max_difference(dg, lap) <= 1e-12 * std::max(1.0, lap.max_abs()));
}

TEST_CASE("laplacian of 1-r^2 is the constant -6") {
  tensor::TensorFieldSpec f;
  f.rank = 0;
  f.alpha = 0.0;
  f.N = 8;
  const radial::RadialBasisId b{0.0, 0};
  const auto quad = radial::radial_quadrature(b, 8);
  VectorXcd samples(static_cast<Eigen::Index>(quad.r.size()));
  for (size_t j = 0; j < quad.r.size(); ++j) samples(static_cast<Eigen::Index>(j)) = 1.0 - quad.r[j] * quad.r[j];
  Eigen::VectorXcd fc = radial::transform_forward(samples, quad, b, 8);
  for (int n = 2; n < 8; ++n) fc(n) = 0.0;  // provably two-mode expansion
  f.entries.emplace(tensor::ComponentKey{0, 0, 0}, fc);
  const auto lap = tensor::divergence(tensor::gradient(f));
  const auto it = lap.entries.find({0, 0, 0});
  REQUIRE(it != lap.entries.end());
  const std::vector<double> pts{0.05, 0.4, 0.99};
  const VectorXcd vals = radial::transform_backward(it->second, {2.0, 0}, pts);
  for (Eigen::Index j = 0; j < vals.size(); ++j) {
    CHECK(vals(j).real() == doctest::Approx(-6.0).epsilon(1e-13));
  }
}

TEST_CASE("divergence ignores the zero-weight leading index") {
  tensor::TensorFieldSpec v;
  v.rank = 1;
  v.alpha = 0.0;
  v.N = 8;
  VectorXcd coeffs = VectorXcd::Random(8);
  v.entries.emplace(tensor::ComponentKey{3, 1, 1}, coeffs);  // a = 0 only
  const auto f = tensor::divergence(v);
  CHECK(f.max_abs() == 0.0);
  CHECK_THROWS_AS(tensor::divergence(tensor::TensorFieldSpec{}), std::invalid_argument);
}

TEST_CASE("second-derivative identities on random vector fields") {
  const auto v = random_spec(1, 4, 24, 102);
  const auto dc = tensor::divergence(tensor::curl(v));
  CHECK(dc.max_abs() <= 1e-12 * std::max(1.0, v.max_abs()));

  const auto f = random_spec(0, 3, 16, 103);
  const auto cg = tensor::curl(tensor::gradient(f));
  CHECK(cg.max_abs() <= 1e-12 * std::max(1.0, f.max_abs()));

  // laplacian = grad div - curl curl
  auto gd = tensor::gradient(tensor::divergence(v));
  const auto cc = tensor::curl(tensor::curl(v));
  const auto lap = tensor::laplacian(v);
  for (auto& [k, val] : gd.entries) {
    const auto it = cc.entries.find(k);
    if (it != cc.entries.end()) val -= it->second;
  }
  for (const auto& [k, val] : cc.entries) {
    if (gd.entries.find(k) == gd.entries.end()) gd.entries.emplace(k, -val);
  }
  CHECK(tensor::max_difference(gd, lap) <= 1e-12 * std::max(1.0, lap.max_abs()));
}

TEST_CASE("both laplacian factor orders agree away from the origin label") {
  const auto v = random_spec(1, 5, 14, 104, /*exclude_origin_degenerate=*/true);
  const auto a = tensor::laplacian(v, tensor::FactorOrder::MinusPlus);
  const auto b = tensor::laplacian(v, tensor::FactorOrder::PlusMinus);
  CHECK(tensor::max_difference(a, b) <= 1e-12 * std::max(1.0, a.max_abs()));

  tensor::TensorFieldSpec low;
  low.rank = 1;
  low.alpha = 0.0;
  low.N = 6;
  low.entries.emplace(tensor::ComponentKey{1, 0, 0}, VectorXcd::Ones(6));  // ell+abar = 0
  CHECK_NOTHROW(tensor::laplacian(low));
  CHECK_THROWS_AS(tensor::laplacian(low, tensor::FactorOrder::PlusMinus), std::invalid_argument);
}

TEST_CASE("curl of a solid-body rotation profile is constant") {
  // v with only the middle regularity component at ell=1, V(r) = c r
  tensor::TensorFieldSpec v;
  v.rank = 1;
  v.alpha = 0.0;
  v.N = 6;
  const radial::RadialBasisId b{0.0, 1};
  VectorXcd coeffs = VectorXcd::Zero(6);
  coeffs(0) = 1.0;  // Q_0 is proportional to r
  v.entries.emplace(tensor::ComponentKey{1, 0, 1}, coeffs);

  const auto u = tensor::curl(v);
  // only the lowered component carries content, ...
  for (const auto& [k, val] : u.entries) {
    if (!(k == tensor::ComponentKey{1, 0, 0})) CHECK(val.cwiseAbs().maxCoeff() == 0.0);
  }
  const auto it = u.entries.find({1, 0, 0});
  REQUIRE(it != u.entries.end());
  // ... and it is a constant profile: -i xi^+_1 (d/dr + 2/r)(c r) = -i sqrt(6) c
  const double c = radial::eval_Q(0, b, 1.0);
  const std::vector<double> pts{0.3, 0.8};
  const VectorXcd vals = radial::transform_backward(it->second, {1.0, 0}, pts);
  for (Eigen::Index j = 0; j < vals.size(); ++j) {
    CHECK(vals(j).real() == doctest::Approx(0.0));
    CHECK(vals(j).imag() == doctest::Approx(-std::sqrt(6.0) * c).epsilon(1e-13));
  }
  CHECK_THROWS_AS(tensor::curl(random_spec(2, 2, 4, 1)), std::invalid_argument);
}

TEST_CASE("gradient of gradient contracts to the laplacian") {
  const auto f = random_spec(0, 3, 12, 105);
  const auto gg = tensor::divergence(tensor::gradient(tensor::gradient(f)));
  // divergence of the rank-2 gradient contracts the leading pair; compare
  // against the gradient of the laplacian-free chain: here use the vector
  // laplacian on the rank-1 gradient instead
  const auto lap_g = tensor::laplacian(tensor::gradient(f));
  CHECK(tensor::max_difference(gg, lap_g) <= 1e-11 * std::max(1.0, lap_g.max_abs()));
}

TEST_CASE("rank-2 gradient keeps only raising and lowering leading indices") {
  const auto v = random_spec(1, 3, 10, 106);
  const auto t = tensor::gradient(v);
  CHECK(t.rank == 2);
  CHECK(t.alpha == 1.0);
  CHECK(!t.entries.empty());
  for (const auto& [k, val] : t.entries) {
    CHECK(k.a_flat / 3 != 1);  // the new leading digit is never the zero index
  }
}

TEST_CASE("angular coupling matrix: closed form, spectrum, diagonalization") {
  // low-degree eigenvalues
  {
    const auto lam = tensor::build_lambda(1, 1);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(lam.matrix);
    CHECK(es.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(es.eigenvalues()(1) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(es.eigenvalues()(2) == doctest::Approx(6.0).epsilon(1e-13));
  }
  // rotation diagonalizes with the shifted eigenvalues
  {
    const auto lam = tensor::build_lambda(1, 2);
    const auto q = reg::build_Q(2, 1);
    const MatrixXd d = q.matrix.transpose() * lam.matrix * q.matrix;
    CHECK(d(0, 0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(d(1, 1) == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(d(2, 2) == doctest::Approx(12.0).epsilon(1e-13));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j) CHECK(std::fabs(d(i, j)) < 1e-13);
      }
    }
  }
  // rank-2 multiplicities at ell=3: (1,2,3,2,1)
  {
    const auto lam = tensor::build_lambda(2, 3);
    CHECK((lam.matrix - lam.matrix.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(lam.matrix);
    const std::vector<std::pair<double, int>> want{{2, 1}, {6, 2}, {12, 3}, {20, 2}, {30, 1}};
    int idx = 0;
    for (const auto& [val, count] : want) {
      for (int k = 0; k < count; ++k) {
        CHECK(es.eigenvalues()(idx++) == doctest::Approx(val).epsilon(1e-12));
      }
    }
  }
  // first-order pieces compose consistently
  for (int rank : {0, 1, 2}) {
    const auto go = tensor::spin_gradient_ops(rank, 6);
    const auto dv = tensor::spin_divergence_ops(rank, 6);
    const int dim = static_cast<int>(go.gr.cols());
    CHECK((dv.dr * go.gr - MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((dv.dm * go.gr + dv.dr * go.gm - 2.0 * MatrixXd::Identity(dim, dim))
              .cwiseAbs()
              .maxCoeff() < 1e-13);
  }
}

TEST_CASE("sphere laplacian closed forms") {
  {
    const auto [rough, restricted] = tensor::sphere_laplacian_check(reg::MultiIndex({1}), 2);
    CHECK(rough == doctest::Approx(-5.0).epsilon(1e-15));
    CHECK(restricted == doctest::Approx(-6.0).epsilon(1e-15));
  }
  for (int ell : {0, 3, 9}) {
    const auto [rough, restricted] = tensor::sphere_laplacian_check(reg::MultiIndex(std::vector<int>{}), ell);
    CHECK(rough == doctest::Approx(-static_cast<double>(ell) * (ell + 1)).epsilon(1e-15));
    CHECK(restricted == rough);
  }
  for (int rank = 1; rank <= 3; ++rank) {
    const int dim = static_cast<int>(std::pow(3, rank));
    for (int flat = 0; flat < dim; ++flat) {
      const auto sigma = reg::MultiIndex::from_flat(flat, rank);
      for (int ell = std::abs(sigma.spin_weight()); ell <= 30; ++ell) {
        CHECK_NOTHROW(tensor::sphere_laplacian_check(sigma, ell));
      }
    }
  }
}

TEST_CASE("matrix-level vector calculus identities") {
  for (int ell : {1, 2, 5, 16}) {
    const int N = 32;
    const MatrixXcd cg = tensor::curl_matrix(1.0, ell, N) * tensor::gradient_matrix(0.0, ell, N);
    CHECK(cg.cwiseAbs().maxCoeff() <= 1e-12);
    const MatrixXcd dc =
        tensor::divergence_matrix(1.0, ell, N) * tensor::curl_matrix(0.0, ell, N);
    CHECK(dc.cwiseAbs().maxCoeff() <= 1e-12);
    const MatrixXcd lhs =
        tensor::gradient_matrix(1.0, ell, N) * tensor::divergence_matrix(0.0, ell, N) -
        tensor::curl_matrix(1.0, ell, N) * tensor::curl_matrix(0.0, ell, N);
    const MatrixXcd lap = tensor::laplacian_matrix(0.0, ell, N);
    CHECK((lhs - lap).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, lap.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("projection chain roundtrips band-limited fields") {
  for (int rank = 0; rank <= 2; ++rank) {
    const int Lmax = rank == 2 ? 4 : 8;
    const int N = 12;
    const auto gspec = tensor::make_grid_spec(rank, 0.0, Lmax, N);
    const auto spec = random_spec(rank, Lmax, N, 200 + static_cast<unsigned>(rank));
    const auto grid = tensor::synthesize_tensor(spec, gspec);
    const auto back = tensor::project_tensor(grid);
    const double tol = rank == 2 ? 1e-10 : 1e-11;
    CHECK(tensor::max_difference(spec, back) <= tol * std::max(1.0, spec.max_abs()));
  }
}

TEST_CASE("constant scalar projects to a single coefficient") {
  const auto gspec = tensor::make_grid_spec(0, 0.0, 4, 6);
  tensor::TensorGrid grid;
  grid.spec = gspec;
  grid.values.assign(2 * gspec.Lmax + 1,
                     {Eigen::MatrixXcd::Zero(gspec.n_theta, gspec.n_r)});
  grid.values[static_cast<size_t>(gspec.Lmax)][0].setConstant(3.7);  // m = 0 slice
  const auto spec = tensor::project_tensor(grid);
  REQUIRE(spec.entries.count({0, 0, 0}) == 1);
  const auto& v = spec.entries.at({0, 0, 0});
  for (const auto& [k, val] : spec.entries) {
    if (k == tensor::ComponentKey{0, 0, 0}) continue;
    CHECK(val.cwiseAbs().maxCoeff() < 1e-12 * v.cwiseAbs().maxCoeff());
  }
  for (int n = 1; n < 6; ++n) CHECK(std::abs(v(n)) < 1e-12 * std::abs(v(0)));
}

TEST_CASE("spectral gradient matches finite differences on the grid") {
  auto f = random_spec(0, 4, 8, 201);
  for (auto& [k, v] : f.entries) {
    for (int n = 0; n < f.N; ++n) v(n) *= std::pow(3.0, -n);
  }
  const auto g = tensor::gradient(f);
  const double h = 1e-4;
  for (int m : {0, 1}) {
    for (double th : {1.0, 2.0}) {
      for (double r : {0.4, 0.7}) {
        const cd fd = (tensor::eval_spin_components(f, m, th, r + h)(0) -
                       tensor::eval_spin_components(f, m, th, r - h)(0)) /
                      (2.0 * h);
        CHECK(std::abs(tensor::eval_spin_components(g, m, th, r)(1) - fd) < 1e-6);
      }
    }
  }
}

TEST_CASE("projection rejects mismatched grids") {
  const auto gspec = tensor::make_grid_spec(1, 0.0, 4, 6);
  tensor::TensorGrid grid;
  grid.spec = gspec;
  grid.values.assign(3, std::vector<Eigen::MatrixXcd>(3));  // wrong m count
  CHECK_THROWS_AS(tensor::project_tensor(grid), std::invalid_argument);
}

TEST_CASE("gradient through rotations matches the first-order spin algebra") {
  // route one: regularity-component gradient, rotated to spin components;
  // route two: the wavenumber/generator matrices applied to the spin
  // components of the input directly
  const int ell = 3, m = 1, N = 12;
  std::mt19937 rng(321);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  tensor::TensorFieldSpec v;
  v.rank = 1;
  v.alpha = 0.0;
  v.N = N;
  for (int a = 0; a < 3; ++a) {
    VectorXcd c(N);
    for (int n = 0; n < N - 2; ++n) c(n) = cd(unit(rng), unit(rng));
    c(N - 2) = c(N - 1) = 0.0;
    v.entries.emplace(tensor::ComponentKey{ell, m, a}, c);
  }
  const auto g = tensor::gradient(v);
  const auto q1 = reg::build_Q(ell, 1);
  const auto q2 = reg::build_Q(ell, 2);
  const auto ops = tensor::spin_gradient_ops(1, ell);

  for (double r : {0.33, 0.61, 0.9}) {
    // spin components of v and of its radial derivative at this radius
    VectorXcd spin_v = VectorXcd::Zero(3), spin_dv = VectorXcd::Zero(3);
    for (int a = 0; a < 3; ++a) {
      const auto& c = v.entries.at({ell, m, a});
      const radial::RadialBasisId rb{0.0, ell + (a - 1)};
      cd val = 0.0, dval = 0.0;
      for (int n = 0; n < N; ++n) {
        val += c(n) * radial::eval_Q(n, rb, r);
        dval += c(n) * radial::eval_Q_deriv(n, rb, r);
      }
      for (int s = 0; s < 3; ++s) {
        spin_v(s) += q1.matrix(s, a) * val;
        spin_dv(s) += q1.matrix(s, a) * dval;
      }
    }
    // route two
    const VectorXcd expect = ops.gr * spin_dv + (1.0 / r) * (ops.gm * spin_v);
    // route one
    VectorXcd got = VectorXcd::Zero(9);
    for (const auto& [k, c] : g.entries) {
      if (k.ell != ell || k.m != m) continue;
      const int abar = reg::MultiIndex::from_flat(k.a_flat, 2).spin_weight();
      cd val = 0.0;
      for (int n = 0; n < N; ++n) val += c(n) * radial::eval_Q(n, {1.0, ell + abar}, r);
      for (int s = 0; s < 9; ++s) got(s) += q2.matrix(s, k.a_flat) * val;
    }
    CHECK((got - expect).cwiseAbs().maxCoeff() <
          1e-11 * std::max(1.0, expect.cwiseAbs().maxCoeff()));
  }
}
