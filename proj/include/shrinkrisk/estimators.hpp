#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shrinkrisk/errors.hpp"

namespace shrinkrisk {

// Model: X | theta ~ N_p(theta, sigma2 I_p), prior theta ~ N_p(nu, tau2 I_p),
// and an independent variance statistic S^2 ~ sigma2 * chi^2_n.
struct ProblemSpec {
  int p = 1;
  int n = 1;
  double sigma2 = 1.0;
  std::vector<double> nu;           // prior mean, length p
  std::optional<double> tau2;       // nullopt: unknown hyperparameter

  // tau2 / sigma2; throws MissingHyperparameter when tau2 is unknown.
  double rho() const;
  double tau2_value() const;
};

// Convenience constructor with nu = 0.
ProblemSpec make_spec(int p, int n, double sigma2,
                      std::optional<double> tau2);

// Throws InvalidInput / InvalidDimension if the spec is malformed.
void validate(const ProblemSpec& spec);

struct Observation {
  std::span<const double> x;  // length p
  double s2 = 1.0;            // realised S^2, > 0
};

struct EstimatorKind {
  enum class Tag {
    Mle,
    Bayes,
    ModifiedBayes,
    EmpiricalModifiedBayes,
    GeneralC,
    JamesStein,
    JamesSteinPlus,
  };

  Tag tag = Tag::Mle;
  double c = 0.0;  // shrink constant, GeneralC only

  static EstimatorKind mle() { return {Tag::Mle, 0.0}; }
  static EstimatorKind bayes() { return {Tag::Bayes, 0.0}; }
  static EstimatorKind modified_bayes() { return {Tag::ModifiedBayes, 0.0}; }
  static EstimatorKind empirical_modified_bayes() {
    return {Tag::EmpiricalModifiedBayes, 0.0};
  }
  static EstimatorKind general_c(double c) { return {Tag::GeneralC, c}; }
  static EstimatorKind james_stein() { return {Tag::JamesStein, 0.0}; }
  static EstimatorKind james_stein_plus() {
    return {Tag::JamesSteinPlus, 0.0};
  }

  // Canonical CLI/CSV names: "mle", "bayes", "modified-bayes",
  // "empirical-modified-bayes", "general-c=<c>", "james-stein",
  // "james-stein-plus".
  std::string name() const;
  static EstimatorKind parse(const std::string& text);

  bool operator==(const EstimatorKind&) const = default;
};

// Point estimate of theta. Throws:
//  - InvalidDimension when sizes disagree (or p < 3 for
//    EmpiricalModifiedBayes),
//  - MissingHyperparameter when Bayes/ModifiedBayes lack tau2,
//  - DivisionByZero when a required norm is exactly zero,
//  - InvalidInput for s2 <= 0 and other malformed values.
std::vector<double> estimate(const EstimatorKind& kind,
                             const ProblemSpec& spec, const Observation& obs);

// Allocation-free variant; out must have length p.
void estimate_into(const EstimatorKind& kind, const ProblemSpec& spec,
                   const Observation& obs, std::span<double> out);

}  // namespace shrinkrisk
