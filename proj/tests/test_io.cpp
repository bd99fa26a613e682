#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <complex>
#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ballspec/angular.hpp"
#include "ballspec/io.hpp"

using namespace ballspec;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("ballspec_io_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("matrix market round trip preserves values and sparsity") {
  TempDir dir;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 5);
  m(0, 1) = 1.25;
  m(3, 0) = -7.5e-13;
  m(2, 4) = 3.0;
  const std::string path = dir.file("m.mtx");
  io::write_matrix_market(path, m);
  const Eigen::MatrixXd back = io::read_matrix_market(path);
  CHECK(back.rows() == 4);
  CHECK(back.cols() == 5);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);

  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  CHECK(header == "%%MatrixMarket matrix coordinate real general");
  int rows, cols, nnz;
  f >> rows >> cols >> nnz;
  CHECK(nnz == 3);
}

TEST_CASE("banded export carries basis labels in the sidecar") {
  TempDir dir;
  const auto op = radial::build_Dminus({0.0, 2}, 6);
  const std::string path = dir.file("dminus.mtx");
  io::write_banded(path, op, "matrixmarket");
  const Eigen::MatrixXd back = io::read_matrix_market(path);
  CHECK((back - op.dense()).cwiseAbs().maxCoeff() == 0.0);

  std::ifstream side(path + ".json");
  REQUIRE(side.good());
  const auto j = nlohmann::json::parse(side);
  CHECK(j.at("in_basis").at("ell").get<int>() == 2);
  CHECK(j.at("out_basis").at("ell").get<int>() == 1);
  CHECK(j.at("out_basis").at("alpha").get<double>() == 1.0);
  CHECK(j.at("band_offsets").size() == 1);
}

TEST_CASE("rotation export includes the validity mask") {
  TempDir dir;
  const auto q = reg::build_Q(0, 2);
  const std::string path = dir.file("qrot.mtx");
  io::write_qrotation(path, q, "matrixmarket");
  std::ifstream side(path + ".json");
  REQUIRE(side.good());
  const auto j = nlohmann::json::parse(side);
  CHECK(j.at("rank").get<int>() == 2);
  CHECK(j.at("valid_cols").size() == 9);
  int valid = 0;
  for (bool b : j.at("valid_cols").get<std::vector<bool>>()) valid += b ? 1 : 0;
  CHECK(valid == q.valid_count());
}

TEST_CASE("sweep table serialization uses the fixed schema") {
  std::vector<solver::SweepRow> rows(1);
  rows[0] = {"tau_alpha0", 0.0, 2, 16, "convert_column", 5.76, 5.76, 1e-15, 0.4};
  const std::string csv = io::sweep_csv_string(rows);
  std::istringstream ss(csv);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "method,alpha,ell,N,tau_variant,kappa_est,kappa_ref,rel_error,wall_time_ms");
  std::getline(ss, line);
  CHECK(line.rfind("tau_alpha0,0,2,16,convert_column,", 0) == 0);
}

TEST_CASE("tensor field state round trips through header and blocks") {
  TempDir dir;
  tensor::TensorFieldSpec spec;
  spec.rank = 1;
  spec.alpha = 0.5;
  spec.N = 5;
  Eigen::VectorXcd v(5);
  for (int n = 0; n < 5; ++n) v(n) = std::complex<double>(n + 0.25, -n);
  spec.entries.emplace(tensor::ComponentKey{2, -1, 0}, v);
  spec.entries.emplace(tensor::ComponentKey{3, 2, 2}, 2.0 * v);

  const std::string stem = dir.file("field");
  io::write_tensor_spec(stem, spec);
  const auto back = io::read_tensor_spec(stem);
  CHECK(back.rank == 1);
  CHECK(back.alpha == 0.5);
  CHECK(back.N == 5);
  CHECK(back.entries.size() == 2);
  CHECK(tensor::max_difference(spec, back) == 0.0);
}

TEST_CASE("theta grid samples export as (theta, value) rows") {
  TempDir dir;
  const auto grid = angular::gauss_legendre_theta(6);
  Eigen::VectorXd vals(6);
  for (int j = 0; j < 6; ++j) vals(j) = angular::eval_Ys_theta({2, 1, 0}, grid.theta[j]);
  const std::string path = dir.file("grid.csv");
  io::write_theta_grid_csv(path, grid.theta, vals);
  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  CHECK(line == "theta,value");
  int rows = 0;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 6);
  Eigen::VectorXd wrong(5);
  CHECK_THROWS_AS(io::write_theta_grid_csv(path, grid.theta, wrong), std::invalid_argument);
}
