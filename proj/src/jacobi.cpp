#include "ballspec/jacobi.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ballspec::jacobi {

void require_valid(const JacobiParams& p) {
  if (!p.valid()) {
    throw std::invalid_argument("Jacobi parameters must satisfy a,b > -1, got a=" +
                                std::to_string(p.a) + " b=" + std::to_string(p.b));
  }
}

namespace {

// Recurrence coefficients for
//   c0 * P_n = (c1*z + c2) * P_{n-1} - c3 * P_{n-2},  n >= 2.
struct RecurrenceStep {
  double c0, c1, c2, c3;
};

RecurrenceStep step(int n, double a, double b) {
  const double t = 2.0 * n + a + b;
  RecurrenceStep s;
  s.c0 = 2.0 * n * (n + a + b) * (t - 2.0);
  s.c1 = (t - 1.0) * t * (t - 2.0);
  s.c2 = (t - 1.0) * (a * a - b * b);
  s.c3 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * t;
  return s;
}

}  // namespace

double eval(int n, const JacobiParams& p, double z) {
  require_valid(p);
  if (n < 0) throw std::invalid_argument("Jacobi degree must be >= 0");
  const double a = p.a, b = p.b;
  double pm1 = 1.0;
  if (n == 0) return pm1;
  double pc = 0.5 * ((a - b) + (a + b + 2.0) * z);
  for (int k = 2; k <= n; ++k) {
    const RecurrenceStep s = step(k, a, b);
    const double pn = ((s.c1 * z + s.c2) * pc - s.c3 * pm1) / s.c0;
    pm1 = pc;
    pc = pn;
  }
  return pc;
}

std::vector<double> eval_all(int n, const JacobiParams& p, double z) {
  require_valid(p);
  if (n < 0) throw std::invalid_argument("Jacobi degree must be >= 0");
  std::vector<double> out(static_cast<size_t>(n) + 1);
  out[0] = 1.0;
  if (n == 0) return out;
  out[1] = 0.5 * ((p.a - p.b) + (p.a + p.b + 2.0) * z);
  for (int k = 2; k <= n; ++k) {
    const RecurrenceStep s = step(k, p.a, p.b);
    out[k] = ((s.c1 * z + s.c2) * out[k - 1] - s.c3 * out[k - 2]) / s.c0;
  }
  return out;
}

ValueAndDerivative eval_with_derivative(int n, const JacobiParams& p, double z) {
  require_valid(p);
  if (n < 0) throw std::invalid_argument("Jacobi degree must be >= 0");
  double pm1 = 1.0, dm1 = 0.0;
  if (n == 0) return {pm1, dm1};
  double pc = 0.5 * ((p.a - p.b) + (p.a + p.b + 2.0) * z);
  double dc = 0.5 * (p.a + p.b + 2.0);
  for (int k = 2; k <= n; ++k) {
    const RecurrenceStep s = step(k, p.a, p.b);
    const double pn = ((s.c1 * z + s.c2) * pc - s.c3 * pm1) / s.c0;
    const double dn = (s.c1 * pc + (s.c1 * z + s.c2) * dc - s.c3 * dm1) / s.c0;
    pm1 = pc;
    dm1 = dc;
    pc = pn;
    dc = dn;
  }
  return {pc, dc};
}

double log_binom(double x, double a) {
  return std::lgamma(x + 1.0) - std::lgamma(a + 1.0) - std::lgamma(x - a + 1.0);
}

double endpoint_value(int n, const JacobiParams& p) {
  require_valid(p);
  return std::exp(std::lgamma(n + p.a + 1.0) - std::lgamma(p.a + 1.0) -
                  std::lgamma(n + 1.0));
}

double weight_integral(const JacobiParams& p) {
  // 2^{a+b+1} B(a+1, b+1)
  return std::exp((p.a + p.b + 1.0) * std::log(2.0) + std::lgamma(p.a + 1.0) +
                  std::lgamma(p.b + 1.0) - std::lgamma(p.a + p.b + 2.0));
}

QuadratureRule gauss_jacobi(int n, const JacobiParams& p) {
  require_valid(p);
  if (n < 1) throw std::invalid_argument("quadrature size must be >= 1");
  const double a = p.a, b = p.b;

  // Golub-Welsch: eigen-decomposition of the symmetric tridiagonal matrix of
  // orthonormal-recurrence coefficients.
  Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 0);
  diag(0) = (b - a) / (a + b + 2.0);
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + a + b;
    diag(k) = (b * b - a * a) / (t * (t + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    double beta2;
    if (k == 1) {
      // (k+a+b) cancels against (2k+a+b-1) at k=1
      beta2 = 4.0 * (1.0 + a) * (1.0 + b) /
              ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    } else {
      const double t = 2.0 * k + a + b;
      beta2 = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
              (t * t * (t + 1.0) * (t - 1.0));
    }
    sub(k - 1) = std::sqrt(beta2);
  }

  QuadratureRule rule;
  rule.params = p;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = weight_integral(p);
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("Golub-Welsch eigen-decomposition failed");
  }
  const double mu0 = weight_integral(p);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

namespace {

double scaled_residual(double lhs, double rhs) {
  const double scale = std::max(1.0, std::max(std::fabs(lhs), std::fabs(rhs)));
  return std::fabs(lhs - rhs) / scale;
}

}  // namespace

RelationReport check_relations(int n, const JacobiParams& p, double z) {
  require_valid(p);
  if (n < 1) throw std::invalid_argument("relation check needs n >= 1");
  RelationReport rep{};
  for (int i = 0; i < RelationReport::kCount; ++i) {
    rep.residual[i] = 0.0;
    rep.checked[i] = false;
  }
  const double a = p.a, b = p.b;
  const double t = 2.0 * n + a + b + 1.0;
  const double pn = eval(n, p, z);

  // connection, a-raise: P^{(a,b)} in terms of P^{(a+1,b)}
  {
    const JacobiParams q{a + 1.0, b};
    const double rhs =
        ((n + a + b + 1.0) * eval(n, q, z) - (n + b) * eval(n - 1, q, z)) / t;
    rep.residual[0] = scaled_residual(pn, rhs);
    rep.checked[0] = true;
  }
  // connection, a-lower: (1-z)/2 P^{(a,b)} in terms of P^{(a-1,b)}
  if (a - 1.0 > -1.0) {
    const JacobiParams q{a - 1.0, b};
    const double lhs = 0.5 * (1.0 - z) * pn;
    const double rhs = (-(n + 1.0) * eval(n + 1, q, z) + (n + a) * eval(n, q, z)) / t;
    rep.residual[1] = scaled_residual(lhs, rhs);
    rep.checked[1] = true;
  }
  // connection, b-raise
  {
    const JacobiParams q{a, b + 1.0};
    const double rhs =
        ((n + a + b + 1.0) * eval(n, q, z) + (n + a) * eval(n - 1, q, z)) / t;
    rep.residual[2] = scaled_residual(pn, rhs);
    rep.checked[2] = true;
  }
  // connection, b-lower: (1+z)/2 P^{(a,b)} in terms of P^{(a,b-1)}
  if (b - 1.0 > -1.0) {
    const JacobiParams q{a, b - 1.0};
    const double lhs = 0.5 * (1.0 + z) * pn;
    const double rhs = ((n + 1.0) * eval(n + 1, q, z) + (n + b) * eval(n, q, z)) / t;
    rep.residual[3] = scaled_residual(lhs, rhs);
    rep.checked[3] = true;
  }

  const double dpn = eval_with_derivative(n, p, z).derivative;
  // derivative: d/dz P^{(a,b)} = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}
  {
    const double rhs = 0.5 * (n + a + b + 1.0) * eval(n - 1, {a + 1.0, b + 1.0}, z);
    rep.residual[4] = scaled_residual(dpn, rhs);
    rep.checked[4] = true;
  }
  // derivative, b-type: [b + (1+z) d/dz] P = (n+b) P^{(a+1,b-1)}
  if (b - 1.0 > -1.0) {
    const double lhs = b * pn + (1.0 + z) * dpn;
    const double rhs = (n + b) * eval(n, {a + 1.0, b - 1.0}, z);
    rep.residual[5] = scaled_residual(lhs, rhs);
    rep.checked[5] = true;
  }
  // derivative, a-type: [a - (1-z) d/dz] P = (n+a) P^{(a-1,b+1)}
  if (a - 1.0 > -1.0) {
    const double lhs = a * pn - (1.0 - z) * dpn;
    const double rhs = (n + a) * eval(n, {a - 1.0, b + 1.0}, z);
    rep.residual[6] = scaled_residual(lhs, rhs);
    rep.checked[6] = true;
  }

  rep.max_residual = 0.0;
  for (int i = 0; i < RelationReport::kCount; ++i) {
    if (rep.checked[i]) rep.max_residual = std::max(rep.max_residual, rep.residual[i]);
  }
  return rep;
}

}  // namespace ballspec::jacobi
