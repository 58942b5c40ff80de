// Acceptance gate: every release criterion in one binary, one PASS/FAIL line
// each, nonzero exit when anything fails. Tolerances are part of the
// contract; do not loosen them to make a run green.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shrinkrisk/monte_carlo.hpp"
#include "shrinkrisk/reports.hpp"

using namespace shrinkrisk;

namespace {

constexpr std::uint64_t kSeed = 20260815;

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(SHRINKRISK_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  CliResult result;
  if (pipe == nullptr) return result;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) result.output += buf;
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// Returns std::nullopt on success, otherwise a short failure note.
using Check = std::function<std::optional<std::string>(std::string& note)>;

int g_failures = 0;

void run_criterion(const char* id, const char* title, const Check& check) {
  std::string note;
  std::optional<std::string> failure;
  const auto start = std::chrono::steady_clock::now();
  try {
    failure = check(note);
  } catch (const std::exception& e) {
    failure = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (failure) {
    ++g_failures;
    std::printf("FAIL %s %s: %s [%.1fs]\n", id, title, failure->c_str(),
                seconds);
  } else {
    std::printf("PASS %s %s%s%s [%.1fs]\n", id, title, note.empty() ? "" : ": ",
                note.c_str(), seconds);
  }
  std::fflush(stdout);
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double exact_risk_of(const EstimatorKind& kind, const ProblemSpec& spec) {
  switch (kind.tag) {
    case EstimatorKind::Tag::Mle:
      return risk_mle(spec);
    case EstimatorKind::Tag::Bayes:
      return risk_bayes(spec).risk;
    case EstimatorKind::Tag::ModifiedBayes:
      return risk_modified_bayes(spec).risk;
    case EstimatorKind::Tag::EmpiricalModifiedBayes:
      return risk_empirical_modified_bayes(spec).risk;
    case EstimatorKind::Tag::GeneralC:
      return risk_general_c(spec, kind.c).risk;
    default:
      throw InvalidInput("no closed form");
  }
}

}  // namespace

int main() {
  // C1: the baseline gate is the MLE — its empirical risk must equal
  // p * sigma2 within 4 standard errors at every cell of the
  // (p, n, tau2) grid, one million replicates per cell.  On top of that
  // the run cross-checks every other closed form whose per-replicate
  // squared error has a finite variance, because only there is the
  // z-statistic asymptotically normal: linear rules (bayes,
  // modified-bayes) qualify at every p, but the norm-based rules divide
  // by ||x - nu||^2, so their squared loss contains (1/chi2_p)^2 whose
  // expectation diverges for p < 5.  At p = 3 those z-scores follow a
  // heavy-tailed self-normalized law, not N(0, 1), so checking them
  // against a 4-SE cut would be noise, not validation; the norm-based
  // closed forms are instead simulation-checked at p >= 5 here and at
  // their own dedicated cell in C2.
  run_criterion(
      "C1", "Monte-Carlo oracle matches closed-form risks (4 SE)",
      [](std::string& note) -> std::optional<std::string> {
        double worst_z = 0.0;
        std::string worst_at;
        int checks = 0;
        for (int p : {3, 10, 50}) {
          for (int n : {2, 5, 30}) {
            for (double tau2 : {0.5, 1.0, 4.0}) {
              McConfig config;
              config.spec = make_spec(p, n, 1.0, tau2);
              config.estimators = {EstimatorKind::mle(),
                                   EstimatorKind::bayes(),
                                   EstimatorKind::modified_bayes()};
              if (p >= 5) {
                const double c_hat = (p - 2.0) / (n + 2.0);
                config.estimators.push_back(
                    EstimatorKind::empirical_modified_bayes());
                config.estimators.push_back(
                    EstimatorKind::general_c(0.5 * c_hat));
                config.estimators.push_back(
                    EstimatorKind::general_c(2.0 * c_hat));
              }
              config.replicates = 1000000;
              config.seed = kSeed;
              const McRun run = empirical_risk(config);
              for (const auto& est : run.estimates) {
                const double exact = exact_risk_of(est.estimator, config.spec);
                const double z = (est.mse_mean - exact) / est.std_error;
                ++checks;
                if (std::fabs(z) > std::fabs(worst_z)) {
                  worst_z = z;
                  worst_at = fmt("p=%d n=%d tau2=%g %s", p, n, tau2,
                                 est.estimator.name().c_str());
                }
                if (std::fabs(z) >= 4.0) {
                  return fmt("|z| = %.2f at p=%d n=%d tau2=%g for %s", z, p, n,
                             tau2, est.estimator.name().c_str());
                }
              }
            }
          }
        }
        note = fmt("27 cells, %d risk checks, worst |z| = %.2f (%s)", checks,
                   std::fabs(worst_z), worst_at.c_str());
        return std::nullopt;
      });

  // C2: the norm-based empirical rule has ratio exactly 11/12 at
  // p = 3, n = 2, tau2 = sigma2, and simulation confirms it.
  run_criterion(
      "C2", "norm-based rule: 11/12 ratio, exact and simulated",
      [](std::string& note) -> std::optional<std::string> {
        const auto spec = make_spec(3, 2, 1.0, 1.0);
        const auto report = risk_empirical_modified_bayes(spec);
        if (std::fabs(report.ratio - 11.0 / 12.0) > 1e-12) {
          return fmt("closed form gave %.17g, want 11/12", report.ratio);
        }
        McConfig config;
        config.spec = spec;
        config.estimators = {EstimatorKind::empirical_modified_bayes()};
        config.replicates = 1000000;
        config.seed = kSeed + 2;
        const McRun run = empirical_risk(config);
        const double z =
            (run.estimates[0].mse_mean - report.risk) / run.estimates[0].std_error;
        if (std::fabs(z) >= 4.0) return fmt("simulation z = %.2f", z);
        note = fmt("ratio = %.17g, simulation z = %.2f", report.ratio, z);
        return std::nullopt;
      });

  // C3: the exact plug-in ratio never escapes its closed-form bracket.
  run_criterion(
      "C3", "plug-in ratio sits inside its bracket on the whole grid",
      [](std::string& note) -> std::optional<std::string> {
        int points = 0;
        for (int n : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 30, 50, 100}) {
          for (int i = 0; i < 40; ++i) {
            const double rho =
                0.01 * std::pow(100.0 / 0.01, i / 39.0);
            const auto report = risk_modified_bayes(make_spec(3, n, 1.0, rho));
            // risk_modified_bayes itself throws ConsistencyError on a bracket
            // escape; double-check here against independently computed ends.
            const double a = 1.0 +
                             n * (n + 2.0) * (1.0 + rho) /
                                 std::pow(n * (1.0 + rho) + 4.0, 2) -
                             2.0 / (1.0 + rho);
            const double b = 1.0 + (n + 2.0) / (n * (1.0 + rho)) -
                             2.0 * n / (n * (1.0 + rho) + 2.0);
            if (report.ratio < a - 1e-10 || report.ratio > b + 1e-10) {
              return fmt("ratio %.17g outside [%.17g, %.17g] at n=%d rho=%g",
                         report.ratio, a, b, n, rho);
            }
            ++points;
          }
        }
        note = fmt("%d (n, rho) points, zero violations", points);
        return std::nullopt;
      });

  // C4: for n >= 5 the closed-form upper bound certifies dominance, and the
  // exact ratio curves at n = 5 and n = 8 indeed stay below one.
  run_criterion(
      "C4", "dominance certificate for n >= 5",
      [](std::string& note) -> std::optional<std::string> {
        for (int n : {5, 6, 7, 8, 9, 10, 11, 12, 20, 50, 100}) {
          for (int i = 0; i < 400; ++i) {
            const double rho = 0.01 * std::pow(100.0 / 0.01, i / 399.0);
            const double bound = upper_bound_curve(n, rho);
            if (bound > 0.0) {
              return fmt("upper bound positive: %.3g at n=%d rho=%g", bound, n,
                         rho);
            }
          }
        }
        GridRequest grid{0.01, 20.0, 200, true};
        for (int n : {5, 8}) {
          for (const auto& pt : ratio_curve(n, make_grid(grid))) {
            if (!(pt.ratio < 1.0)) {
              return fmt("ratio %.17g >= 1 at n=%d rho=%g", pt.ratio, n,
                         pt.rho);
            }
            if (!(pt.ratio <= pt.upper_bound && pt.ratio >= pt.lower_bound)) {
              return fmt("curve escaped bracket at n=%d rho=%g", n, pt.rho);
            }
          }
        }
        note = "4400 bound points + exact curves at n = 5, 8";
        return std::nullopt;
      });

  // C5: both exact ratios converge to tau2/(tau2+sigma2); at n = 10^4 (and
  // p = n = 10^4 for the norm-based rule) the gap is below 1e-3.
  run_criterion(
      "C5", "asymptotic limit reached at n = 10^4 within 1e-3",
      [](std::string& note) -> std::optional<std::string> {
        double worst = 0.0;
        for (double rho : {0.5, 1.0, 4.0}) {
          const double limit = rho / (1.0 + rho);
          const double gap = std::fabs(
              risk_modified_bayes(make_spec(3, 10000, 1.0, rho)).ratio - limit);
          worst = std::max(worst, gap);
          if (gap >= 1e-3) {
            return fmt("plug-in gap %.3g at n=10^4 rho=%g", gap, rho);
          }
        }
        const auto eb = risk_empirical_modified_bayes(
            make_spec(10000, 10000, 1.0, 1.0));
        const double eb_gap = std::fabs(eb.ratio - eb.limit_ratio);
        worst = std::max(worst, eb_gap);
        if (eb_gap >= 1e-3) {
          return fmt("norm-based gap %.3g at p=n=10^4", eb_gap);
        }
        note = fmt("worst gap %.2e", worst);
        return std::nullopt;
      });

  // C6: the risk-minimising shrink constant: numeric argmin to 1e-10,
  // exact window endpoints, and the simulated risk ordering around c_hat.
  run_criterion(
      "C6", "optimal shrink constant: argmin, endpoints, MC ordering",
      [](std::string& note) -> std::optional<std::string> {
        for (int p : {3, 7, 25}) {
          for (int n : {1, 4, 12}) {
            const auto spec = make_spec(p, n, 1.0, 1.0);
            const double closed = (p - 2.0) / (n + 2.0);
            const double numeric = optimal_c_numeric(spec);
            if (std::fabs(numeric - closed) / closed > 1e-10) {
              return fmt("argmin %.17g vs %.17g at p=%d n=%d", numeric, closed,
                         p, n);
            }
            const double r0 = risk_general_c(spec, 0.0).risk;
            const double r2 = risk_general_c(spec, 2.0 * closed).risk;
            const double base = risk_mle(spec);
            if (std::fabs(r0 - base) > 1e-12 * base ||
                std::fabs(r2 - base) > 1e-12 * base) {
              return fmt("window endpoints off baseline at p=%d n=%d", p, n);
            }
          }
        }
        // Simulated ordering: c_hat beats both 0.5 c_hat and 1.5 c_hat.
        McConfig config;
        config.spec = make_spec(7, 4, 1.0, 1.0);
        const double c_hat = (7.0 - 2.0) / (4.0 + 2.0);
        config.estimators = {EstimatorKind::general_c(c_hat),
                             EstimatorKind::general_c(0.5 * c_hat),
                             EstimatorKind::general_c(1.5 * c_hat)};
        config.replicates = 1000000;
        config.seed = kSeed + 6;
        const McRun run = empirical_risk(config);
        for (std::size_t i = 0; i < 3; ++i) {
          const double exact =
              exact_risk_of(run.estimates[i].estimator, config.spec);
          const double z =
              (run.estimates[i].mse_mean - exact) / run.estimates[i].std_error;
          if (std::fabs(z) >= 4.0) {
            return fmt("simulation z = %.2f for %s", z,
                       run.estimates[i].estimator.name().c_str());
          }
        }
        if (!(run.estimates[0].mse_mean < run.estimates[1].mse_mean &&
              run.estimates[0].mse_mean < run.estimates[2].mse_mean)) {
          return std::string("simulated risks are not ordered around c_hat");
        }
        note = "9 argmin cells to 1e-10; endpoints to 1e-12; MC ordering holds";
        return std::nullopt;
      });

  // C7: the identity-verification harness is clean on its default grids, both
  // in-process and through the CLI.
  run_criterion(
      "C7", "identity suites all pass on default grids",
      [](std::string& note) -> std::optional<std::string> {
        VerifyOptions options;
        options.seed = kSeed;
        const VerifyReport report = verify_lemmas(options);
        if (report.failures != 0) {
          return fmt("%lld of %lld checks failed",
                     static_cast<long long>(report.failures),
                     static_cast<long long>(report.checks_run));
        }
        const auto cli = run_cli("verify-lemmas");
        if (cli.exit_code != 0) {
          return fmt("CLI verify-lemmas exited %d", cli.exit_code);
        }
        note = fmt("%lld checks, zero failures (library and CLI)",
                   static_cast<long long>(report.checks_run));
        return std::nullopt;
      });

  // C8: simulation reports are byte-identical whatever the thread count.
  run_criterion(
      "C8", "simulation output is byte-identical across thread counts",
      [](std::string& note) -> std::optional<std::string> {
        const std::string common =
            "mc-risk --p 5 --n 3 --tau2 2 --replicates 100000 --seed 31 ";
        const auto one = run_cli(common + "--threads 1");
        const auto four = run_cli(common + "--threads 4");
        if (one.exit_code != 0 || four.exit_code != 0) {
          return fmt("CLI exits: %d and %d", one.exit_code, four.exit_code);
        }
        if (one.output != four.output) {
          return std::string("outputs differ between --threads 1 and 4");
        }
        if (one.output.empty()) return std::string("empty output");

        // Same law in-process: two identical configs, bitwise-equal results.
        McConfig config;
        config.spec = make_spec(5, 3, 1.0, 2.0);
        config.estimators = {EstimatorKind::modified_bayes()};
        config.replicates = 100000;
        config.seed = 31;
        config.threads = 1;
        const McRun a = empirical_risk(config);
        config.threads = 4;
        const McRun b = empirical_risk(config);
        if (a.estimates[0].mse_mean != b.estimates[0].mse_mean ||
            a.estimates[0].std_error != b.estimates[0].std_error) {
          return std::string("in-process results differ across thread counts");
        }
        note = "CLI bytes and in-process doubles identical (1 vs 4 threads)";
        return std::nullopt;
      });

  if (g_failures == 0) {
    std::printf("ACCEPTANCE: all criteria passed\n");
  } else {
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
