#pragma once

#include <vector>

namespace ballspec::jacobi {

/// Parameters (a,b) of the classical Jacobi family P_n^{(a,b)} on [-1,1],
/// orthogonal under the weight (1-z)^a (1+z)^b. Requires a,b > -1.
struct JacobiParams {
  double a;
  double b;
  bool valid() const { return a > -1.0 && b > -1.0; }
};

/// Throws std::invalid_argument if p is outside the classical range.
void require_valid(const JacobiParams& p);

/// P_n^{(a,b)}(z) by the ascending three-term recurrence.
double eval(int n, const JacobiParams& p, double z);

/// P_k^{(a,b)}(z) for k = 0..n, one recurrence pass.
std::vector<double> eval_all(int n, const JacobiParams& p, double z);

/// (P_n(z), d/dz P_n(z)) via the differentiated recurrence. The derivative
/// route here is independent of the parameter-shift identities, so it can
/// serve as one side of their verification.
struct ValueAndDerivative {
  double value;
  double derivative;
};
ValueAndDerivative eval_with_derivative(int n, const JacobiParams& p, double z);

/// P_n^{(a,b)}(1) = Gamma(n+a+1) / (Gamma(a+1) n!), via log-gamma.
double endpoint_value(int n, const JacobiParams& p);

/// log of the generalized binomial Gamma(x+1)/(Gamma(a+1) Gamma(x-a+1)).
double log_binom(double x, double a);

/// Integral of the weight, (1-z)^a (1+z)^b over [-1,1].
double weight_integral(const JacobiParams& p);

/// Gauss-Jacobi quadrature: nodes are roots of P_n^{(a,b)}; exact for
/// polynomial integrands of degree <= 2n-1 under the Jacobi weight.
struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, in (-1,1)
  std::vector<double> weights;  // positive, sum = weight_integral(params)
  JacobiParams params;
};
QuadratureRule gauss_jacobi(int n, const JacobiParams& p);

/// Two-sided residuals of the parameter-connection and derivative relations
/// at a single (n, a, b, z). Residuals are scaled by max(1, |lhs|, |rhs|).
/// Relations that would shift a parameter to <= -1 are skipped (residual 0,
/// flagged in `checked`).
struct RelationReport {
  // connection: a-raise, a-lower (weight (1-z)/2), b-raise, b-lower ((1+z)/2)
  // derivative: d/dz, b-type, a-type
  static constexpr int kCount = 7;
  double residual[kCount];
  bool checked[kCount];
  double max_residual;
};
RelationReport check_relations(int n, const JacobiParams& p, double z);

}  // namespace ballspec::jacobi
