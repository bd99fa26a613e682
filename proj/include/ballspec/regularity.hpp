#pragma once

#include <Eigen/Dense>
#include <vector>

namespace ballspec::reg {

/// Ordered list of tensor indices, each in {-1,0,+1}. Flat enumeration is
/// lexicographic with the first (most recently attached) index most
/// significant and digit order (-1,0,+1).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  static MultiIndex from_flat(int flat, int rank);

  int rank() const { return static_cast<int>(entries_.size()); }
  int flat() const;
  int spin_weight() const;  // sum of entries
  int entry(int i) const { return entries_[static_cast<size_t>(i)]; }
  const std::vector<int>& entries() const { return entries_; }
  MultiIndex dual() const;  // negated and reversed

 private:
  std::vector<int> entries_;
};

/// Gradient weights sqrt(ell/(2ell+1)), 0, sqrt((ell+1)/(2ell+1)) for
/// sign = -1, 0, +1.
double xi(int sign, int ell);

/// The three 3^rank x 3^rank sl(2) generators, lifted from the rank-1 seeds
/// by Kronecker sums (one copy acting on each tensor slot). J0 is diagonal
/// with the spin weights; [J0, J±] = ±J±, [J+, J-] = 2 J0 at every rank.
struct SpinGeneratorSet {
  int rank = 0;
  Eigen::MatrixXd j0, jplus, jminus;
  const Eigen::MatrixXd& by_sign(int sign) const;
};
SpinGeneratorSet build_generators(int rank);

/// The ell-dependent orthogonal rotation between regularity components
/// (columns) and spin components (rows). Columns that do not exist at low
/// ell are zero and masked invalid; the valid columns are orthonormal.
struct QRotation {
  int ell = 0;
  int rank = 0;
  Eigen::MatrixXd matrix;
  std::vector<bool> valid_cols;
  int valid_count() const;
};
QRotation build_Q(int ell, int rank);

/// Max residual of a single contraction identity instance: sum over paired
/// leading spin indices of xi-weighted rotation entries against the
/// rank-reduced rotation. Enumerates all valid index combinations.
double contract_identity_check(int ell, int rank);

/// Multiplicity of the regularity offset a among the 3^rank components
/// (the trinomial-triangle entry); 0 for |a| > rank.
long long degeneracy(int a, int rank);

/// Kronecker power of the unitary map between coordinate components
/// (r, theta, phi) and spin components (-,0,+).
struct SpinBasisTransform {
  int rank = 0;
  Eigen::MatrixXcd u;  // 3^rank x 3^rank
  Eigen::VectorXcd to_spin(const Eigen::VectorXcd& coord) const;
  Eigen::VectorXcd to_coord(const Eigen::VectorXcd& spin) const;
};
SpinBasisTransform spin_basis_transform(int rank);

}  // namespace ballspec::reg
