#include "shrinkrisk/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace shrinkrisk {

double ProblemSpec::tau2_value() const {
  if (!tau2.has_value()) {
    throw MissingHyperparameter("tau2 is unknown for this problem");
  }
  return *tau2;
}

double ProblemSpec::rho() const { return tau2_value() / sigma2; }

ProblemSpec make_spec(int p, int n, double sigma2,
                      std::optional<double> tau2) {
  ProblemSpec spec;
  spec.p = p;
  spec.n = n;
  spec.sigma2 = sigma2;
  spec.nu.assign(p >= 0 ? static_cast<std::size_t>(p) : 0, 0.0);
  spec.tau2 = tau2;
  validate(spec);
  return spec;
}

void validate(const ProblemSpec& spec) {
  if (spec.p < 1) throw InvalidInput("p must be >= 1");
  if (spec.n < 1) throw InvalidInput("n must be >= 1");
  if (!(spec.sigma2 > 0.0) || !std::isfinite(spec.sigma2)) {
    throw InvalidInput("sigma2 must be finite and > 0");
  }
  if (spec.tau2.has_value() &&
      (!(*spec.tau2 >= 0.0) || !std::isfinite(*spec.tau2))) {
    throw InvalidInput("tau2 must be finite and >= 0");
  }
  if (spec.nu.size() != static_cast<std::size_t>(spec.p)) {
    throw InvalidDimension("nu must have length p");
  }
}

std::string EstimatorKind::name() const {
  switch (tag) {
    case Tag::Mle:
      return "mle";
    case Tag::Bayes:
      return "bayes";
    case Tag::ModifiedBayes:
      return "modified-bayes";
    case Tag::EmpiricalModifiedBayes:
      return "empirical-modified-bayes";
    case Tag::GeneralC: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "general-c=%.17g", c);
      return buf;
    }
    case Tag::JamesStein:
      return "james-stein";
    case Tag::JamesSteinPlus:
      return "james-stein-plus";
  }
  throw InvalidInput("unknown estimator tag");
}

EstimatorKind EstimatorKind::parse(const std::string& text) {
  if (text == "mle") return mle();
  if (text == "bayes") return bayes();
  if (text == "modified-bayes") return modified_bayes();
  if (text == "empirical-modified-bayes") return empirical_modified_bayes();
  if (text == "james-stein") return james_stein();
  if (text == "james-stein-plus") return james_stein_plus();
  constexpr const char* kPrefix = "general-c=";
  if (text.rfind(kPrefix, 0) == 0) {
    const std::string num = text.substr(std::string(kPrefix).size());
    try {
      std::size_t pos = 0;
      const double c = std::stod(num, &pos);
      if (pos != num.size() || !std::isfinite(c)) {
        throw InvalidInput("bad shrink constant: " + num);
      }
      return general_c(c);
    } catch (const std::logic_error&) {
      throw InvalidInput("bad shrink constant: " + num);
    }
  }
  throw InvalidInput("unknown estimator kind: " + text);
}

namespace {

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double squared_distance(std::span<const double> v, std::span<const double> w) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v[i] - w[i];
    s += d * d;
  }
  return s;
}

// delta = nu + (1 - w) (x - nu)
void shrink_toward_nu(const ProblemSpec& spec, std::span<const double> x,
                      double w, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = spec.nu[i] + (1.0 - w) * (x[i] - spec.nu[i]);
  }
}

}  // namespace

void estimate_into(const EstimatorKind& kind, const ProblemSpec& spec,
                   const Observation& obs, std::span<double> out) {
  validate(spec);
  const std::size_t p = static_cast<std::size_t>(spec.p);
  if (obs.x.size() != p) throw InvalidDimension("x must have length p");
  if (out.size() != p) throw InvalidDimension("output must have length p");
  if (!(obs.s2 > 0.0) || !std::isfinite(obs.s2)) {
    throw InvalidInput("s2 must be finite and > 0");
  }

  switch (kind.tag) {
    case EstimatorKind::Tag::Mle:
      std::copy(obs.x.begin(), obs.x.end(), out.begin());
      return;

    case EstimatorKind::Tag::Bayes: {
      const double t2 = spec.tau2_value();
      const double w = spec.sigma2 / (t2 + spec.sigma2);
      shrink_toward_nu(spec, obs.x, w, out);
      return;
    }

    case EstimatorKind::Tag::ModifiedBayes: {
      const double t2 = spec.tau2_value();
      const double w = obs.s2 / (obs.s2 + spec.n * t2);
      shrink_toward_nu(spec, obs.x, w, out);
      return;
    }

    case EstimatorKind::Tag::EmpiricalModifiedBayes: {
      if (spec.p < 3) {
        throw InvalidDimension(
            "empirical-modified-bayes requires p >= 3");
      }
      const double sq = squared_distance(obs.x, spec.nu);
      if (sq == 0.0) throw DivisionByZero("||x - nu||^2 is zero");
      const double w =
          (spec.p - 2.0) / (spec.n + 2.0) * obs.s2 / sq;
      shrink_toward_nu(spec, obs.x, w, out);
      return;
    }

    case EstimatorKind::Tag::GeneralC: {
      if (!std::isfinite(kind.c)) throw InvalidInput("c must be finite");
      const double sq = squared_distance(obs.x, spec.nu);
      if (sq == 0.0) throw DivisionByZero("||x - nu||^2 is zero");
      const double w = kind.c * obs.s2 / sq;
      shrink_toward_nu(spec, obs.x, w, out);
      return;
    }

    case EstimatorKind::Tag::JamesStein:
    case EstimatorKind::Tag::JamesSteinPlus: {
      // Shrinks toward the origin, not toward nu.
      const double sq = squared_norm(obs.x);
      if (sq == 0.0) throw DivisionByZero("||x||^2 is zero");
      double factor =
          1.0 - (spec.p - 2.0) * obs.s2 / ((spec.n + 2.0) * sq);
      if (kind.tag == EstimatorKind::Tag::JamesSteinPlus) {
        factor = std::max(0.0, factor);
      }
      for (std::size_t i = 0; i < p; ++i) out[i] = factor * obs.x[i];
      return;
    }
  }
  throw InvalidInput("unknown estimator tag");
}

std::vector<double> estimate(const EstimatorKind& kind,
                             const ProblemSpec& spec, const Observation& obs) {
  std::vector<double> out(static_cast<std::size_t>(spec.p));
  estimate_into(kind, spec, obs, out);
  return out;
}

}  // namespace shrinkrisk
