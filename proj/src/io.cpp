#include "ballspec/io.hpp"

#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace ballspec::io {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << std::setprecision(17);
  return f;
}

using nlohmann::json;

}  // namespace

void write_matrix_market(const std::string& path, const Eigen::MatrixXd& m) {
  auto f = open_out(path);
  long long nnz = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) ++nnz;
    }
  }
  f << "%%MatrixMarket matrix coordinate real general\n";
  f << m.rows() << " " << m.cols() << " " << nnz << "\n";
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) != 0.0) f << (i + 1) << " " << (j + 1) << " " << m(i, j) << "\n";
    }
  }
}

Eigen::MatrixXd read_matrix_market(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(f, line) || line.rfind("%%MatrixMarket", 0) != 0) {
    throw std::runtime_error("not a MatrixMarket file: " + path);
  }
  while (std::getline(f, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream header(line);
  Eigen::Index rows, cols;
  long long nnz;
  header >> rows >> cols >> nnz;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  for (long long k = 0; k < nnz; ++k) {
    Eigen::Index i, j;
    double v;
    f >> i >> j >> v;
    m(i - 1, j - 1) = v;
  }
  return m;
}

namespace {

void write_dense_csv(const std::string& path, const Eigen::MatrixXd& m) {
  auto f = open_out(path);
  f << "row,col,value\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) f << i << "," << j << "," << m(i, j) << "\n";
    }
  }
}

void write_matrix(const std::string& path, const Eigen::MatrixXd& m,
                  const std::string& format) {
  if (format == "matrixmarket") {
    write_matrix_market(path, m);
  } else if (format == "csv") {
    write_dense_csv(path, m);
  } else if (format == "json") {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<std::vector<double>> entries;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index jj = 0; jj < m.cols(); ++jj) {
        if (m(i, jj) != 0.0) {
          entries.push_back({static_cast<double>(i), static_cast<double>(jj), m(i, jj)});
        }
      }
    }
    j["entries"] = entries;
    open_out(path) << j.dump(1) << "\n";
  } else {
    throw std::invalid_argument("unknown format '" + format + "'");
  }
}

}  // namespace

void write_banded(const std::string& path, const radial::BandedOperator& op,
                  const std::string& format) {
  write_matrix(path, op.dense(), format);
  json side;
  side["in_basis"] = {{"alpha", op.in_basis.alpha}, {"ell", op.in_basis.ell}};
  side["out_basis"] = {{"alpha", op.out_basis.alpha}, {"ell", op.out_basis.ell}};
  side["shape"] = {op.rows, op.cols};
  std::vector<int> offsets;
  for (const auto& [o, v] : op.bands) offsets.push_back(o);
  side["band_offsets"] = offsets;
  open_out(path + ".json") << side.dump(1) << "\n";
}

void write_coeffs_csv(const std::string& path, const Eigen::VectorXd& coeffs) {
  auto f = open_out(path);
  f << "n,value\n";
  for (Eigen::Index n = 0; n < coeffs.size(); ++n) f << n << "," << coeffs(n) << "\n";
}

void write_theta_grid_csv(const std::string& path, const std::vector<double>& theta,
                          const Eigen::VectorXd& values) {
  if (static_cast<Eigen::Index>(theta.size()) != values.size()) {
    throw std::invalid_argument("theta grid and values differ in length");
  }
  auto f = open_out(path);
  f << "theta,value\n";
  for (size_t j = 0; j < theta.size(); ++j) {
    f << theta[j] << "," << values(static_cast<Eigen::Index>(j)) << "\n";
  }
}

void write_qrotation(const std::string& path, const reg::QRotation& q,
                     const std::string& format) {
  write_matrix(path, q.matrix, format);
  json side;
  side["ell"] = q.ell;
  side["rank"] = q.rank;
  side["index_order"] = "first index most significant, digits (-1,0,+1)";
  side["valid_cols"] = q.valid_cols;
  open_out(path + ".json") << side.dump(1) << "\n";
}

std::string sweep_csv_string(const std::vector<solver::SweepRow>& rows) {
  std::ostringstream f;
  f << std::setprecision(17);
  f << "method,alpha,ell,N,tau_variant,kappa_est,kappa_ref,rel_error,wall_time_ms\n";
  for (const auto& r : rows) {
    f << r.method << "," << r.alpha << "," << r.ell << "," << r.N << "," << r.tau_variant << ","
      << r.kappa_est << "," << r.kappa_ref << "," << r.rel_error << "," << r.wall_time_ms
      << "\n";
  }
  return f.str();
}

void write_sweep_csv(const std::string& path, const std::vector<solver::SweepRow>& rows) {
  open_out(path) << sweep_csv_string(rows);
}

void write_tensor_spec(const std::string& stem, const tensor::TensorFieldSpec& spec) {
  int lmax = 0;
  for (const auto& [k, v] : spec.entries) lmax = std::max(lmax, k.ell);
  json header;
  header["rank"] = spec.rank;
  header["alpha"] = spec.alpha;
  header["Lmax"] = lmax;
  header["N"] = spec.N;
  header["index_order"] = "first index most significant, digits (-1,0,+1)";
  header["blocks"] = spec.entries.size();
  open_out(stem + ".json") << header.dump(1) << "\n";

  auto f = open_out(stem + ".csv");
  f << "ell,m,a_flat,n,re,im\n";
  for (const auto& [k, v] : spec.entries) {
    for (Eigen::Index n = 0; n < v.size(); ++n) {
      f << k.ell << "," << k.m << "," << k.a_flat << "," << n << "," << v(n).real() << ","
        << v(n).imag() << "\n";
    }
  }
}

tensor::TensorFieldSpec read_tensor_spec(const std::string& stem) {
  std::ifstream hf(stem + ".json");
  if (!hf) throw std::runtime_error("cannot open '" + stem + ".json'");
  json header = json::parse(hf);
  tensor::TensorFieldSpec spec;
  spec.rank = header.at("rank").get<int>();
  spec.alpha = header.at("alpha").get<double>();
  spec.N = header.at("N").get<int>();

  std::ifstream f(stem + ".csv");
  if (!f) throw std::runtime_error("cannot open '" + stem + ".csv'");
  std::string line;
  std::getline(f, line);  // header
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    auto next = [&]() {
      if (!std::getline(ss, tok, ',')) throw std::runtime_error("bad tensor csv row");
      return tok;
    };
    tensor::ComponentKey key{};
    key.ell = std::stoi(next());
    key.m = std::stoi(next());
    key.a_flat = std::stoi(next());
    const int n = std::stoi(next());
    const double re = std::stod(next());
    const double im = std::stod(next());
    auto [it, inserted] = spec.entries.try_emplace(key, Eigen::VectorXcd::Zero(spec.N));
    it->second(n) = {re, im};
  }
  return spec;
}

}  // namespace ballspec::io
