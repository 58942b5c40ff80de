#pragma once

#include <optional>
#include <string>

#include "shrinkrisk/chi2.hpp"
#include "shrinkrisk/estimators.hpp"

namespace shrinkrisk {

// Minimaxity of an estimator against the constant-risk baseline p*sigma2:
//  - Proven:    a closed-form argument guarantees risk <= p*sigma2,
//  - NotProven: no such argument applies and no numeric violation was seen,
//  - Violated:  the computed ratio exceeds 1 + 1e-9.
enum class MinimaxVerdict { Proven, NotProven, Violated };

std::string to_string(MinimaxVerdict verdict);

struct RiskReport {
  EstimatorKind estimator;
  double risk = 0.0;   // quadratic risk, == ratio * p * sigma2
  double ratio = 0.0;  // risk / (p * sigma2)
  std::optional<double> lower_bound;  // closed-form bracket on the ratio
  std::optional<double> upper_bound;
  MinimaxVerdict minimax = MinimaxVerdict::NotProven;
  double limit_ratio = 0.0;  // large-n,p limit of the ratio
};

// Risk of the MLE X: p * sigma2, independent of theta.
double risk_mle(const ProblemSpec& spec);

// Bayes risk of the Bayes rule: ratio = tau2 / (tau2 + sigma2).
RiskReport risk_bayes(const ProblemSpec& spec);

// Exact Bayes risk of the plug-in rule that estimates the shrink weight by
// S^2/(S^2 + n tau2). Ratio
//   1 + n(n+2)(1+rho) E_{chi2_{n+4}}[1/(u+n rho)^2]
//     - 2n            E_{chi2_{n+2}}[1/(u+n rho)]
// with rho = tau2/sigma2, evaluated by quadrature, plus the closed-form
// bracket on the ratio. Escaping the bracket raises ConsistencyError.
RiskReport risk_modified_bayes(const ProblemSpec& spec,
                               double rel_tol = kDefaultRelTol);

// Exact Bayes risk of the norm-based empirical rule (requires p >= 3):
//   ratio = 1 - ((p-2)/p) (n/(n+2)) sigma2/(tau2+sigma2).
RiskReport risk_empirical_modified_bayes(const ProblemSpec& spec);

// Exact Bayes risk of the shrink-constant family
//   delta_c = nu + (1 - c S^2 / ||X - nu||^2)(X - nu),  p >= 3:
//   ratio = 1 - [(2n(p-2)c - n(n+2)c^2) / (p(p-2))] sigma2/(tau2+sigma2).
// Minimax exactly when 0 <= c <= 2(p-2)/(n+2).
RiskReport risk_general_c(const ProblemSpec& spec, double c);

// Risk-minimising shrink constant (p-2)/(n+2). Cross-checks a numeric argmin
// against the closed form to 1e-10 relative (ConsistencyError on mismatch).
double optimal_c(const ProblemSpec& spec);

// Numeric argmin of risk_general_c over [0, 4(p-2)/(n+2)]: golden-section
// bracketing followed by an exact parabolic-vertex refinement.
double optimal_c_numeric(const ProblemSpec& spec);

// Closed-form upper bound minus one for the plug-in rule's ratio:
//   n(n+2)(1+rho)/(n(1+rho))^2 - 2n/(n+2+n rho).
// Nonpositive for every n >= 5, which proves minimaxity there.
double upper_bound_curve(int n, double rho);

// Large-(n,p) limit of every shrinkage ratio here: tau2/(tau2+sigma2).
double asymptotic_limit(const ProblemSpec& spec);

// Which shrink-weight plug-in to compare against the oracle weight
// sigma2/(tau2+sigma2).
enum class RatioBias { ModifiedRatio, EmpiricalRatio };

// E[plug-in weight] - oracle weight. ModifiedRatio uses
// E[S^2/(S^2+n tau2)] = n E_{chi2_{n+2}}[1/(u+n rho)] and must land in
// [n/(n(1+rho)+2) - 1/(1+rho), 0]; EmpiricalRatio is the closed form
// -2/(n+2) * sigma2/(tau2+sigma2).
double unbiasedness_gap(const ProblemSpec& spec, RatioBias which,
                        double rel_tol = kDefaultRelTol);

}  // namespace shrinkrisk
