#include "ballspec/regularity.hpp"

#include <cmath>
#include <stdexcept>

#include "ballspec/angular.hpp"

namespace ballspec::reg {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < -1 || e > 1) throw std::invalid_argument("multi-index entries must be in {-1,0,+1}");
  }
}

MultiIndex MultiIndex::from_flat(int flat, int rank) {
  std::vector<int> e(static_cast<size_t>(rank));
  for (int i = rank - 1; i >= 0; --i) {
    e[static_cast<size_t>(i)] = flat % 3 - 1;
    flat /= 3;
  }
  return MultiIndex(std::move(e));
}

int MultiIndex::flat() const {
  int f = 0;
  for (int e : entries_) f = 3 * f + (e + 1);
  return f;
}

int MultiIndex::spin_weight() const {
  int s = 0;
  for (int e : entries_) s += e;
  return s;
}

MultiIndex MultiIndex::dual() const {
  std::vector<int> e(entries_.rbegin(), entries_.rend());
  for (int& v : e) v = -v;
  return MultiIndex(std::move(e));
}

double xi(int sign, int ell) {
  if (ell < 0) throw std::invalid_argument("xi needs ell >= 0");
  switch (sign) {
    case -1:
      return std::sqrt(static_cast<double>(ell) / (2.0 * ell + 1.0));
    case 0:
      return 0.0;
    case 1:
      return std::sqrt((ell + 1.0) / (2.0 * ell + 1.0));
    default:
      throw std::invalid_argument("xi sign must be in {-1,0,+1}");
  }
}

namespace {

Eigen::MatrixXd seed(int sign) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(3, 3);
  const double s2 = std::sqrt(2.0);
  switch (sign) {
    case 0:
      j(0, 0) = -1.0;
      j(2, 2) = 1.0;
      break;
    case -1:
      j(0, 1) = -s2;
      j(1, 2) = s2;
      break;
    case 1:
      j(1, 0) = -s2;
      j(2, 1) = s2;
      break;
    default:
      throw std::invalid_argument("generator sign must be in {-1,0,+1}");
  }
  return j;
}

Eigen::MatrixXd kronecker_sum_lift(const Eigen::MatrixXd& s, int rank) {
  Eigen::MatrixXd acc = s;
  for (int r = 2; r <= rank; ++r) {
    const int n = static_cast<int>(acc.rows());
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    // acc (x) I3
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (acc(i, j) == 0.0) continue;
        for (int k = 0; k < 3; ++k) next(3 * i + k, 3 * j + k) += acc(i, j);
      }
    }
    // I_n (x) seed … the new slot is the least significant digit; the
    // Kronecker sum is slot-symmetric, so accumulation order is immaterial.
    for (int blk = 0; blk < n; ++blk) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          if (s(i, j) != 0.0) next(3 * blk + i, 3 * blk + j) += s(i, j);
        }
      }
    }
    acc = next;
  }
  return acc;
}

int ipow3(int r) {
  int v = 1;
  for (int i = 0; i < r; ++i) v *= 3;
  return v;
}

}  // namespace

const Eigen::MatrixXd& SpinGeneratorSet::by_sign(int sign) const {
  switch (sign) {
    case -1:
      return jminus;
    case 0:
      return j0;
    case 1:
      return jplus;
    default:
      throw std::invalid_argument("generator sign must be in {-1,0,+1}");
  }
}

SpinGeneratorSet build_generators(int rank) {
  if (rank < 1) throw std::invalid_argument("generators need rank >= 1");
  SpinGeneratorSet g;
  g.rank = rank;
  g.j0 = kronecker_sum_lift(seed(0), rank);
  g.jplus = kronecker_sum_lift(seed(1), rank);
  g.jminus = kronecker_sum_lift(seed(-1), rank);
  return g;
}

int QRotation::valid_count() const {
  int c = 0;
  for (bool v : valid_cols) c += v ? 1 : 0;
  return c;
}

QRotation build_Q(int ell, int rank) {
  if (ell < 0 || rank < 0) throw std::invalid_argument("build_Q needs ell, rank >= 0");
  QRotation q;
  q.ell = ell;
  q.rank = 0;
  q.matrix = Eigen::MatrixXd::Ones(1, 1);
  q.valid_cols = {true};

  for (int r = 0; r < rank; ++r) {
    const int dim = ipow3(r);
    // adjoint seeds: the recursion's J^sigma are the daggered generators,
    // i.e. the lift of J_{-sigma}
    Eigen::MatrixXd jdag[3];
    if (r == 0) {
      // scalar basis carries no connection term
      jdag[0] = jdag[1] = jdag[2] = Eigen::MatrixXd::Zero(1, 1);
    } else {
      const SpinGeneratorSet g = build_generators(r);
      jdag[0] = g.jplus;   // sigma = -1
      jdag[1] = g.j0;      // sigma = 0
      jdag[2] = g.jminus;  // sigma = +1
    }

    // spin weight of each row multi-index of the current rank
    std::vector<double> row_weight(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      row_weight[static_cast<size_t>(i)] = MultiIndex::from_flat(i, r).spin_weight();
    }

    QRotation next;
    next.ell = ell;
    next.rank = r + 1;
    next.matrix = Eigen::MatrixXd::Zero(3 * dim, 3 * dim);
    next.valid_cols.assign(static_cast<size_t>(3 * dim), false);

    for (int jb = 0; jb < dim; ++jb) {
      if (!q.valid_cols[static_cast<size_t>(jb)]) continue;
      const int bbar = MultiIndex::from_flat(jb, r).spin_weight();
      const double lb = ell + bbar;
      const Eigen::VectorXd qcol = q.matrix.col(jb);

      // R column per new spin index sigma
      Eigen::VectorXd rcol[3];
      for (int si = 0; si < 3; ++si) {
        const int sigma = si - 1;
        Eigen::VectorXd kq(dim);
        for (int i = 0; i < dim; ++i) {
          kq(i) = angular::k_wavenumber(sigma, ell, static_cast<int>(row_weight[static_cast<size_t>(i)])) * qcol(i);
        }
        rcol[si] = -kq;
        if (sigma != 0) {
          rcol[si] += (sigma / std::sqrt(2.0)) * (jdag[static_cast<size_t>(si)] * qcol);
        }
      }

      for (int ai = 0; ai < 3; ++ai) {
        const int a = ai - 1;
        const int col = ai * dim + jb;
        const bool exists = (a == 1) || (lb >= 1.0);
        if (!exists) continue;
        next.valid_cols[static_cast<size_t>(col)] = true;
        double denom;
        switch (a) {
          case -1:
            denom = std::sqrt(lb * (2.0 * lb + 1.0));
            break;
          case 0:
            denom = std::sqrt(lb * (lb + 1.0));
            break;
          default:
            denom = std::sqrt((lb + 1.0) * (2.0 * lb + 1.0));
            break;
        }
        for (int si = 0; si < 3; ++si) {
          const int sigma = si - 1;
          Eigen::VectorXd block;
          switch (a) {
            case -1:
              block = (sigma == 0 ? (lb * qcol - rcol[si]).eval() : (-rcol[si]).eval());
              break;
            case 0:
              block = (sigma * rcol[si]).eval();
              break;
            default:
              block = (sigma == 0 ? ((lb + 1.0) * qcol + rcol[si]).eval() : rcol[si].eval());
              break;
          }
          next.matrix.block(si * dim, col, dim, 1) = block / denom;
        }
      }
    }
    q = std::move(next);
  }
  return q;
}

double contract_identity_check(int ell, int rank) {
  if (rank < 2) throw std::invalid_argument("contraction identity needs rank >= 2");
  const QRotation qr = build_Q(ell, rank);
  const QRotation qr2 = build_Q(ell, rank - 2);
  const int dim_kappa = ipow3(rank - 2);

  double max_res = 0.0;
  for (int jc = 0; jc < dim_kappa; ++jc) {
    if (!qr2.valid_cols[static_cast<size_t>(jc)]) continue;
    const int cbar = MultiIndex::from_flat(jc, rank - 2).spin_weight();
    for (int a = -1; a <= 1; ++a) {
      for (int b = -1; b <= 1; ++b) {
        // column abc of the rank-r rotation
        const int col = (a + 1) * 3 * dim_kappa + (b + 1) * dim_kappa + jc;
        if (!qr.valid_cols[static_cast<size_t>(col)]) continue;
        if (ell + b + cbar < 0) continue;
        const double xa = xi(a, ell + b + cbar);
        const double xb = xi(b, ell + cbar);
        for (int jk = 0; jk < dim_kappa; ++jk) {
          // LHS: sum over sigma = -tau of the leading pair
          double lhs = 0.0;
          for (int sigma = -1; sigma <= 1; ++sigma) {
            const int tau = -sigma;
            const int row = (sigma + 1) * 3 * dim_kappa + (tau + 1) * dim_kappa + jk;
            lhs += xa * qr.matrix(row, col);
          }
          const double rhs = (a == -b) ? xb * qr2.matrix(jk, jc) : 0.0;
          max_res = std::max(max_res, std::fabs(lhs - rhs));
        }
      }
    }
  }
  return max_res;
}

long long degeneracy(int a, int rank) {
  if (rank < 0) throw std::invalid_argument("degeneracy needs rank >= 0");
  if (std::abs(a) > rank) return 0;
  std::vector<long long> d{1};  // offsets -r..r, rank 0
  for (int r = 0; r < rank; ++r) {
    std::vector<long long> next(d.size() + 2, 0);
    for (size_t i = 0; i < d.size(); ++i) {
      next[i] += d[i];
      next[i + 1] += d[i];
      next[i + 2] += d[i];
    }
    d = std::move(next);
  }
  return d[static_cast<size_t>(a + rank)];
}

Eigen::VectorXcd SpinBasisTransform::to_spin(const Eigen::VectorXcd& coord) const {
  if (coord.size() != u.rows()) throw std::invalid_argument("component count mismatch");
  return u.conjugate() * coord;
}

Eigen::VectorXcd SpinBasisTransform::to_coord(const Eigen::VectorXcd& spin) const {
  if (spin.size() != u.rows()) throw std::invalid_argument("component count mismatch");
  return u.transpose() * spin;
}

SpinBasisTransform spin_basis_transform(int rank) {
  if (rank < 1) throw std::invalid_argument("spin basis transform needs rank >= 1");
  using cd = std::complex<double>;
  Eigen::MatrixXcd u1(3, 3);
  const double inv_s2 = 1.0 / std::sqrt(2.0);
  u1 << cd(0, 0), cd(inv_s2, 0), cd(0, inv_s2),  //
      cd(1, 0), cd(0, 0), cd(0, 0),              //
      cd(0, 0), cd(inv_s2, 0), cd(0, -inv_s2);
  Eigen::MatrixXcd u = u1;
  for (int r = 2; r <= rank; ++r) {
    const Eigen::Index n = u.rows();
    Eigen::MatrixXcd next(3 * n, 3 * n);
    for (Eigen::Index i = 0; i < 3; ++i) {
      for (Eigen::Index j = 0; j < 3; ++j) next.block(i * n, j * n, n, n) = u1(i, j) * u;
    }
    u = std::move(next);
  }
  SpinBasisTransform t;
  t.rank = rank;
  t.u = std::move(u);
  return t;
}

}  // namespace ballspec::reg
