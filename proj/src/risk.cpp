#include "shrinkrisk/risk.hpp"

#include <cmath>
#include <string>

namespace shrinkrisk {

namespace {

// Absolute slack allowed when asserting closed-form brackets on quantities
// computed by quadrature at kDefaultRelTol.
constexpr double kBracketSlack = 1e-8;

// Ratios within this of 1 are not called violations.
constexpr double kMinimaxSlack = 1e-9;

void require_p3(const ProblemSpec& spec, const char* what) {
  if (spec.p < 3) {
    throw InvalidDimension(std::string(what) + " requires p >= 3");
  }
}

}  // namespace

std::string to_string(MinimaxVerdict verdict) {
  switch (verdict) {
    case MinimaxVerdict::Proven:
      return "Proven";
    case MinimaxVerdict::NotProven:
      return "NotProven";
    case MinimaxVerdict::Violated:
      return "Violated";
  }
  return "NotProven";
}

double risk_mle(const ProblemSpec& spec) {
  validate(spec);
  return spec.p * spec.sigma2;
}

double asymptotic_limit(const ProblemSpec& spec) {
  validate(spec);
  const double t2 = spec.tau2_value();
  return t2 / (t2 + spec.sigma2);
}

RiskReport risk_bayes(const ProblemSpec& spec) {
  validate(spec);
  const double t2 = spec.tau2_value();
  const double ratio = t2 / (t2 + spec.sigma2);

  RiskReport report;
  report.estimator = EstimatorKind::bayes();
  report.ratio = ratio;
  report.risk = ratio * spec.p * spec.sigma2;
  // The Bayes rule's frequentist risk is unbounded in theta, so no
  // minimaxity argument applies even though the Bayes ratio is < 1.
  report.minimax = MinimaxVerdict::NotProven;
  report.limit_ratio = ratio;
  return report;
}

double upper_bound_curve(int n, double rho) {
  if (n < 1) throw InvalidInput("n must be >= 1");
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw InvalidInput("rho must be finite and > 0");
  }
  const double a = n * (1.0 + rho);
  return n * (n + 2.0) * (1.0 + rho) / (a * a) - 2.0 * n / (n + 2.0 + n * rho);
}

RiskReport risk_modified_bayes(const ProblemSpec& spec, double rel_tol) {
  validate(spec);
  const double rho = spec.rho();
  const int n = spec.n;
  const double c = n * rho;

  const double e1 = expect_inv_shift(n + 2, c, rel_tol);
  const double e2 = expect_inv_shift_sq(n + 4, c, rel_tol);
  const double ratio =
      1.0 + n * (n + 2.0) * (1.0 + rho) * e2 - 2.0 * n * e1;

  const double a = n * (1.0 + rho);
  const double lower =
      1.0 + n * (n + 2.0) * (1.0 + rho) / ((a + 4.0) * (a + 4.0)) -
      2.0 / (1.0 + rho);
  const double upper =
      1.0 + (n + 2.0) / a - 2.0 * n / (a + 2.0);

  if (ratio < lower - kBracketSlack || ratio > upper + kBracketSlack) {
    throw ConsistencyError(
        "modified-bayes ratio escaped its closed-form bracket: ratio=" +
        std::to_string(ratio) + " bracket=[" + std::to_string(lower) + ", " +
        std::to_string(upper) + "]");
  }

  RiskReport report;
  report.estimator = EstimatorKind::modified_bayes();
  report.ratio = ratio;
  report.risk = ratio * spec.p * spec.sigma2;
  report.lower_bound = lower;
  report.upper_bound = upper;
  if (n >= 5 || upper < 1.0) {
    report.minimax = MinimaxVerdict::Proven;
  } else if (ratio > 1.0 + kMinimaxSlack) {
    report.minimax = MinimaxVerdict::Violated;
  } else {
    report.minimax = MinimaxVerdict::NotProven;
  }
  report.limit_ratio = rho / (1.0 + rho);
  return report;
}

RiskReport risk_empirical_modified_bayes(const ProblemSpec& spec) {
  validate(spec);
  require_p3(spec, "empirical-modified-bayes risk");
  const double t2 = spec.tau2_value();
  const double bt = spec.sigma2 / (t2 + spec.sigma2);
  const double ratio =
      1.0 - (spec.p - 2.0) / spec.p * (spec.n / (spec.n + 2.0)) * bt;

  RiskReport report;
  report.estimator = EstimatorKind::empirical_modified_bayes();
  report.ratio = ratio;
  report.risk = ratio * spec.p * spec.sigma2;
  // ratio <= 1 with equality only as tau2 -> inf, for every p >= 3.
  report.minimax = MinimaxVerdict::Proven;
  report.limit_ratio = 1.0 - bt;
  return report;
}

RiskReport risk_general_c(const ProblemSpec& spec, double c) {
  validate(spec);
  require_p3(spec, "general-c risk");
  if (!std::isfinite(c)) throw InvalidInput("c must be finite");
  const double t2 = spec.tau2_value();
  const double bt = spec.sigma2 / (t2 + spec.sigma2);
  const int n = spec.n;
  const int p = spec.p;
  // Quadratic in c, positive leading coefficient; the two ratio-equals-one
  // roots are c = 0 and c = 2(p-2)/(n+2).
  const double gain =
      (2.0 * n * (p - 2.0) * c - n * (n + 2.0) * c * c) / (p * (p - 2.0));
  const double ratio = 1.0 - gain * bt;

  RiskReport report;
  report.estimator = EstimatorKind::general_c(c);
  report.ratio = ratio;
  report.risk = ratio * spec.p * spec.sigma2;
  const double c_max = 2.0 * (p - 2.0) / (n + 2.0);
  if (c >= 0.0 && c <= c_max) {
    report.minimax = MinimaxVerdict::Proven;
  } else if (ratio > 1.0 + kMinimaxSlack) {
    report.minimax = MinimaxVerdict::Violated;
  } else {
    report.minimax = MinimaxVerdict::NotProven;
  }
  report.limit_ratio = 1.0 - bt;
  return report;
}

double optimal_c_numeric(const ProblemSpec& spec) {
  validate(spec);
  require_p3(spec, "optimal_c");
  spec.tau2_value();

  const double range = 4.0 * (spec.p - 2.0) / (spec.n + 2.0);
  auto f = [&](double c) { return risk_general_c(spec, c).risk; };

  // Golden-section bracketing.
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.0;
  double b = range;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-7 * range; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }

  // The risk is globally quadratic in c, so one parabolic vertex through
  // three well-separated points recovers the argmin to machine precision
  // (comparisons alone stall at the sqrt(eps) plateau).
  double x0 = 0.5 * (a + b);
  const double h = range / 16.0;
  x0 = std::min(std::max(x0, h), range - h);
  const double fm = f(x0 - h);
  const double f0 = f(x0);
  const double fp = f(x0 + h);
  const double curvature = fp - 2.0 * f0 + fm;
  if (!(curvature > 0.0)) {
    throw ConsistencyError("general-c risk is not convex in c");
  }
  return x0 - 0.5 * h * (fp - fm) / curvature;
}

double optimal_c(const ProblemSpec& spec) {
  validate(spec);
  require_p3(spec, "optimal_c");
  spec.tau2_value();
  const double c_hat = (spec.p - 2.0) / (spec.n + 2.0);
  const double numeric = optimal_c_numeric(spec);
  if (std::abs(numeric - c_hat) > 1e-10 * c_hat) {
    throw ConsistencyError(
        "numeric argmin disagrees with (p-2)/(n+2): " +
        std::to_string(numeric) + " vs " + std::to_string(c_hat));
  }
  return c_hat;
}

double unbiasedness_gap(const ProblemSpec& spec, RatioBias which,
                        double rel_tol) {
  validate(spec);
  const double rho = spec.rho();
  const double oracle = 1.0 / (1.0 + rho);  // sigma2 / (tau2 + sigma2)

  if (which == RatioBias::EmpiricalRatio) {
    require_p3(spec, "empirical ratio gap");
    // E[(p-2)/(n+2) S^2/||X-nu||^2] = oracle * n/(n+2) exactly.
    return oracle * (spec.n / (spec.n + 2.0) - 1.0);
  }

  const int n = spec.n;
  const double mean_weight =
      n * expect_inv_shift(n + 2, n * rho, rel_tol);
  const double gap = mean_weight - oracle;
  const double lower = n / (n * (1.0 + rho) + 2.0) - oracle;
  if (gap > kBracketSlack || gap < lower - kBracketSlack) {
    throw ConsistencyError(
        "modified-ratio gap escaped its bracket: gap=" + std::to_string(gap) +
        " bracket=[" + std::to_string(lower) + ", 0]");
  }
  return gap;
}

}  // namespace shrinkrisk
