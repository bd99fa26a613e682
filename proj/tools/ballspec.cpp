#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>
#include <string>
#include <vector>

#include "ballspec/io.hpp"
#include "ballspec/radial.hpp"
#include "ballspec/regularity.hpp"
#include "ballspec/solver.hpp"
#include "ballspec/tensor.hpp"
#include "ballspec/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitVerification = 3;

// range syntax: "a", "a:b", "a:b:step", "a:b:xK" (geometric, factor K)
std::vector<int> parse_range(const std::string& text) {
  std::vector<int> out;
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  if (parts.size() == 1) {
    out.push_back(std::stoi(parts[0]));
    return out;
  }
  const int a = std::stoi(parts[0]);
  const int b = std::stoi(parts[1]);
  if (parts.size() == 2) {
    for (int v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  if (!parts[2].empty() && (parts[2][0] == 'x' || parts[2][0] == 'X')) {
    const int k = std::stoi(parts[2].substr(1));
    if (k < 2) throw std::invalid_argument("geometric step must be >= 2");
    for (long long v = a; v <= b; v *= k) out.push_back(static_cast<int>(v));
    return out;
  }
  const int step = std::stoi(parts[2]);
  if (step < 1) throw std::invalid_argument("step must be >= 1");
  for (int v = a; v <= b; v += step) out.push_back(v);
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string extension(const std::string& format) {
  if (format == "matrixmarket") return ".mtx";
  if (format == "csv") return ".csv";
  return ".json";
}

int cmd_operators(double alpha, int ell, int N, int rank, const std::string& format,
                  const std::string& outdir) {
  const ballspec::radial::RadialBasisId basis{alpha, ell};
  if (!basis.valid() || N < 1 || rank < 0) {
    std::cerr << "invalid (alpha, ell, N, rank)\n";
    return kExitConfig;
  }
  try {
    std::filesystem::create_directories(outdir);
    const std::string ext = extension(format);
    namespace rad = ballspec::radial;
    ballspec::io::write_banded(outdir + "/dplus" + ext, rad::build_Dplus(basis, N), format);
    if (ell >= 1) {
      ballspec::io::write_banded(outdir + "/dminus" + ext, rad::build_Dminus(basis, N), format);
    } else {
      std::cerr << "note: ell = 0 has no lowering operator; dminus skipped\n";
    }
    ballspec::io::write_banded(outdir + "/conv" + ext, rad::build_C(basis, N), format);
    ballspec::io::write_banded(outdir + "/rmul" + ext, rad::build_R(basis, N), format);
    ballspec::io::write_coeffs_csv(outdir + "/restriction.csv",
                                   rad::restriction_row(basis, N).transpose());
    ballspec::io::write_qrotation(outdir + "/qrot" + ext, ballspec::reg::build_Q(ell, rank),
                                  format);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int cmd_verify(bool quick, const std::string& json_path) {
  const auto results = ballspec::verify::run_invariants(quick);
  int failures = 0;
  std::cout << std::left;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[ ok ] " : "[FAIL] ") << std::setw(36) << r.name << " residual "
              << std::scientific << std::setprecision(3) << r.residual << " tol " << r.tolerance
              << std::defaultfloat << "\n";
    if (!r.pass) ++failures;
  }
  std::cout << results.size() << " invariants, " << failures << " failed\n";
  if (!json_path.empty()) {
    nlohmann::json j;
    j["quick"] = quick;
    j["failures"] = failures;
    auto& arr = j["invariants"];
    for (const auto& r : results) {
      arr.push_back({{"name", r.name},
                     {"max_residual", r.residual},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass},
                     {"wall_time_ms", r.wall_time_ms}});
    }
    std::ofstream f(json_path);
    if (!f) {
      std::cerr << "io error: cannot write " << json_path << "\n";
      return kExitIo;
    }
    f << j.dump(1) << "\n";
  }
  return failures == 0 ? kExitOk : kExitVerification;
}

int cmd_bessel(const std::string& ell_spec, const std::string& n_spec, int fixed_n,
               const std::string& methods_csv, const std::string& out, int jobs) {
  std::vector<int> ells, ns;
  std::vector<std::string> methods;
  try {
    ells = parse_range(ell_spec);
    ns = fixed_n > 0 ? std::vector<int>{fixed_n} : parse_range(n_spec);
    methods = split_list(methods_csv);
    if (methods.empty() || ells.empty() || ns.empty()) {
      throw std::invalid_argument("empty methods / ell / N selection");
    }
    for (const auto& m : methods) {
      if (m != "tau_alpha0" && m != "jones_worland" && m != "chebyshev" && m != "galerkin") {
        throw std::invalid_argument("unknown method '" + m + "'");
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    const auto rows = ballspec::solver::error_sweep(methods, ells, ns, jobs);
    if (out.empty()) {
      std::cout << ballspec::io::sweep_csv_string(rows);
    } else {
      ballspec::io::write_sweep_csv(out, rows);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int cmd_roundtrip(int rank, int lmax, int n, unsigned seed, const std::string& out_stem) {
  if (rank < 0 || rank > 2 || lmax < 0 || n < 1) {
    std::cerr << "config error: need 0 <= rank <= 2, Lmax >= 0, N >= 1\n";
    return kExitConfig;
  }
  try {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    ballspec::tensor::TensorFieldSpec spec;
    spec.rank = rank;
    spec.alpha = 0.0;
    spec.N = n;
    const int dim = static_cast<int>(std::pow(3, rank));
    for (int ell = 0; ell <= lmax; ++ell) {
      for (int m = -ell; m <= ell; ++m) {
        for (int a = 0; a < dim; ++a) {
          if (!ballspec::tensor::TensorFieldSpec::component_exists(ell, rank, a)) continue;
          Eigen::VectorXcd v(n);
          for (int k = 0; k < n; ++k) v(k) = std::complex<double>(unit(rng), unit(rng));
          spec.entries.emplace(ballspec::tensor::ComponentKey{ell, m, a}, std::move(v));
        }
      }
    }
    const auto gspec = ballspec::tensor::make_grid_spec(rank, 0.0, lmax, n);
    const auto grid = ballspec::tensor::synthesize_tensor(spec, gspec);
    const auto back = ballspec::tensor::project_tensor(grid);
    const double err = ballspec::tensor::max_difference(spec, back) / spec.max_abs();
    nlohmann::json report;
    report["rank"] = rank;
    report["Lmax"] = lmax;
    report["N"] = n;
    report["seed"] = seed;
    report["components"] = spec.entries.size();
    report["max_rel_error"] = err;
    std::cout << report.dump(1) << "\n";
    if (!out_stem.empty()) ballspec::io::write_tensor_spec(out_stem, spec);
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral operators and benchmarks for the unit ball"};
  app.require_subcommand(1);

  int jobs = 1;
  if (const char* env = std::getenv("BALLSPEC_JOBS")) jobs = std::max(1, std::atoi(env));
  app.add_option("--jobs", jobs, "worker threads for sweeps");

  auto* op = app.add_subcommand("operators", "write sparse radial operators and the rotation");
  double op_alpha = 0.0;
  int op_ell = 0, op_n = 8, op_rank = 1;
  std::string op_format = "matrixmarket", op_out = ".";
  op->add_option("--alpha", op_alpha)->required();
  op->add_option("--ell", op_ell)->required();
  op->add_option("--N", op_n)->required();
  op->add_option("--rank", op_rank);
  op->add_option("--format", op_format)->check(CLI::IsMember({"matrixmarket", "csv", "json"}));
  op->add_option("--out", op_out);

  auto* ver = app.add_subcommand("verify", "run the named identity suites");
  bool quick = false;
  std::string ver_json;
  ver->add_flag("--quick", quick, "fast subset");
  ver->add_option("--json", ver_json, "write a machine-readable report");

  auto* bes = app.add_subcommand("bessel", "Dirichlet eigenvalue benchmark error sweep");
  std::string bes_ell = "2", bes_n = "8:64:x2", bes_methods = "tau_alpha0,jones_worland,chebyshev";
  std::string bes_out;
  int bes_fixed_n = 0;
  bes->add_option("--ell", bes_ell, "degree or range a:b[:step]");
  bes->add_option("--N", bes_n, "truncation range a:b[:step|:xK]");
  bes->add_option("--fixedN", bes_fixed_n, "single truncation for degree sweeps");
  bes->add_option("--methods", bes_methods);
  bes->add_option("--out", bes_out, "CSV path (stdout when omitted)");

  auto* rt = app.add_subcommand("roundtrip", "grid <-> spectral projection roundtrip");
  int rt_rank = 1, rt_lmax = 8, rt_n = 12;
  unsigned rt_seed = 0;
  std::string rt_out;
  rt->add_option("--rank", rt_rank);
  rt->add_option("--Lmax", rt_lmax);
  rt->add_option("--N", rt_n);
  rt->add_option("--seed", rt_seed);
  rt->add_option("--out", rt_out, "stem for the serialized field");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (op->parsed()) return cmd_operators(op_alpha, op_ell, op_n, op_rank, op_format, op_out);
  if (ver->parsed()) return cmd_verify(quick, ver_json);
  if (bes->parsed()) return cmd_bessel(bes_ell, bes_n, bes_fixed_n, bes_methods, bes_out, jobs);
  if (rt->parsed()) return cmd_roundtrip(rt_rank, rt_lmax, rt_n, rt_seed, rt_out);
  return kExitConfig;
}
