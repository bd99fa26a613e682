#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ballspec/radial.hpp"
#include "ballspec/regularity.hpp"
#include "ballspec/solver.hpp"
#include "ballspec/tensor.hpp"

namespace ballspec::io {

/// MatrixMarket coordinate format (real general, 1-based indices).
void write_matrix_market(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_market(const std::string& path);

/// Banded operator with a JSON sidecar (<path>.json) carrying basis labels
/// and band offsets.
void write_banded(const std::string& path, const radial::BandedOperator& op,
                  const std::string& format);

/// Coefficient vector as CSV rows (n, value).
void write_coeffs_csv(const std::string& path, const Eigen::VectorXd& coeffs);

/// Colatitude grid samples as CSV rows (theta, value).
void write_theta_grid_csv(const std::string& path, const std::vector<double>& theta,
                          const Eigen::VectorXd& values);

/// Q rotation in the chosen format plus a JSON sidecar with the validity mask.
void write_qrotation(const std::string& path, const reg::QRotation& q,
                     const std::string& format);

/// Sweep table with the fixed schema
/// method,alpha,ell,N,tau_variant,kappa_est,kappa_ref,rel_error,wall_time_ms.
void write_sweep_csv(const std::string& path, const std::vector<solver::SweepRow>& rows);
std::string sweep_csv_string(const std::vector<solver::SweepRow>& rows);

/// Tensor field state: <stem>.json header (rank, alpha, Lmax, N, index
/// order) and <stem>.csv blocks keyed (ell, m, a_flat) with one row per
/// coefficient (n, re, im).
void write_tensor_spec(const std::string& stem, const tensor::TensorFieldSpec& spec);
tensor::TensorFieldSpec read_tensor_spec(const std::string& stem);

}  // namespace ballspec::io
