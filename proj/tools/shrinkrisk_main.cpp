// Command-line front end: exact and Monte-Carlo risk reports for shrinkage
// estimators of a multivariate normal mean, plus figure-style sweeps and an
// identity-verification harness. All tables are CSV (or JSON) with fixed
// column order and 17-significant-digit values, so identical invocations
// produce byte-identical files.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shrinkrisk/monte_carlo.hpp"
#include "shrinkrisk/reports.hpp"

namespace {

using shrinkrisk::EstimatorKind;
using shrinkrisk::GridRequest;
using shrinkrisk::ProblemSpec;
using shrinkrisk::RiskReport;
using shrinkrisk::Table;

constexpr int kExitOk = 0;
constexpr int kExitInvariantViolation = 1;
constexpr int kExitInvalidInput = 2;

struct GlobalOptions {
  std::string out;
  std::string format = "csv";
  std::string manifest;
  std::uint64_t seed = 20260815;
  int threads = 0;
};

std::vector<double> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw shrinkrisk::InvalidInput("cannot open vector file: " + path);
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    // Accept comma- or whitespace-separated values.
    std::stringstream ss(token);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      if (piece.empty()) continue;
      try {
        std::size_t pos = 0;
        values.push_back(std::stod(piece, &pos));
        if (pos != piece.size()) {
          throw shrinkrisk::InvalidInput("bad number in " + path + ": " + piece);
        }
      } catch (const std::logic_error&) {
        throw shrinkrisk::InvalidInput("bad number in " + path + ": " + piece);
      }
    }
  }
  if (values.empty()) {
    throw shrinkrisk::InvalidInput("vector file is empty: " + path);
  }
  return values;
}

std::vector<EstimatorKind> parse_kind_list(const std::string& text) {
  std::vector<EstimatorKind> kinds;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    if (!piece.empty()) kinds.push_back(EstimatorKind::parse(piece));
  }
  if (kinds.empty()) {
    throw shrinkrisk::InvalidInput("no estimator kinds given");
  }
  return kinds;
}

void emit(const Table& table, const GlobalOptions& global,
          const std::string& command) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!global.out.empty() && global.out != "-") {
    file.open(global.out, std::ios::binary);
    if (!file) {
      throw shrinkrisk::InvalidInput("cannot open output file: " + global.out);
    }
    out = &file;
  }
  if (global.format == "json") {
    shrinkrisk::write_json(table, *out);
  } else {
    shrinkrisk::write_csv(table, *out);
  }

  if (!global.manifest.empty()) {
    nlohmann::ordered_json doc;
    doc["tool"] = "shrinkrisk";
    doc["version"] = shrinkrisk::kVersion;
    doc["command"] = command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.meta) params[key] = value;
    doc["parameters"] = std::move(params);
    std::ofstream mf(global.manifest, std::ios::binary);
    if (!mf) {
      throw shrinkrisk::InvalidInput("cannot open manifest file: " +
                                     global.manifest);
    }
    mf << doc.dump(2) << "\n";
  }
}

void add_spec_meta(Table& table, const ProblemSpec& spec) {
  table.meta.emplace_back("p", std::to_string(spec.p));
  table.meta.emplace_back("n", std::to_string(spec.n));
  table.meta.emplace_back("sigma2", shrinkrisk::format_double(spec.sigma2));
  table.meta.emplace_back("tau2", spec.tau2 ? shrinkrisk::format_double(*spec.tau2)
                                            : std::string("unknown"));
}

// Closed-form risk report for any kind that has one; throws InvalidInput for
// the James-Stein variants (Monte Carlo is the tool for those).
RiskReport closed_form_report(const EstimatorKind& kind,
                              const ProblemSpec& spec) {
  switch (kind.tag) {
    case EstimatorKind::Tag::Mle: {
      RiskReport report;
      report.estimator = kind;
      report.risk = shrinkrisk::risk_mle(spec);
      report.ratio = 1.0;
      report.minimax = shrinkrisk::MinimaxVerdict::Proven;
      report.limit_ratio = 1.0;
      return report;
    }
    case EstimatorKind::Tag::Bayes:
      return shrinkrisk::risk_bayes(spec);
    case EstimatorKind::Tag::ModifiedBayes:
      return shrinkrisk::risk_modified_bayes(spec);
    case EstimatorKind::Tag::EmpiricalModifiedBayes:
      return shrinkrisk::risk_empirical_modified_bayes(spec);
    case EstimatorKind::Tag::GeneralC:
      return shrinkrisk::risk_general_c(spec, kind.c);
    case EstimatorKind::Tag::JamesStein:
    case EstimatorKind::Tag::JamesSteinPlus:
      throw shrinkrisk::InvalidInput("no closed-form risk for " + kind.name());
  }
  throw shrinkrisk::InvalidInput("unknown estimator kind");
}

bool has_closed_form(const EstimatorKind& kind) {
  return kind.tag != EstimatorKind::Tag::JamesStein &&
         kind.tag != EstimatorKind::Tag::JamesSteinPlus;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "shrinkrisk: exact and Monte-Carlo quadratic risk for shrinkage "
      "estimators of a multivariate normal mean"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--out", global.out,
                 "Output file (default: stdout)")
      ->capture_default_str();
  app.add_option("--format", global.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--seed", global.seed, "Monte-Carlo seed")
      ->capture_default_str();
  app.add_option("--threads", global.threads,
                 "Worker threads (0 = hardware)")
      ->capture_default_str();
  app.add_option("--manifest", global.manifest,
                 "Also write a JSON run manifest to this path");

  // ---- estimate -----------------------------------------------------------
  auto* cmd_estimate = app.add_subcommand(
      "estimate", "Point estimate of theta from an observation vector");
  std::string est_x_file;
  std::string est_kind = "empirical-modified-bayes";
  std::string est_nu_file;
  bool est_nu_zero = false;
  int est_n = 1;
  int est_p = 0;
  double est_sigma2 = 1.0;
  double est_s2 = 1.0;
  std::optional<double> est_tau2;
  cmd_estimate->add_option("x-file", est_x_file, "Observation vector (CSV/whitespace)")
      ->required();
  cmd_estimate->add_option("--kind", est_kind, "Estimator kind")
      ->capture_default_str();
  cmd_estimate->add_option("--n", est_n, "Chi-square dof of S^2")->required();
  cmd_estimate->add_option("--p", est_p, "Dimension (default: from file)");
  cmd_estimate->add_option("--sigma2", est_sigma2, "Sampling variance")
      ->capture_default_str();
  cmd_estimate->add_option("--tau2", est_tau2, "Prior variance");
  cmd_estimate->add_option("--s2", est_s2, "Realised S^2")
      ->capture_default_str();
  cmd_estimate->add_option("--nu-file", est_nu_file, "Prior mean vector file");
  cmd_estimate->add_flag("--nu-zero", est_nu_zero, "Use nu = 0");

  // ---- exact-risk / minimax-check / mc-risk -------------------------------
  struct SpecFlags {
    int p = 3;
    int n = 1;
    double sigma2 = 1.0;
    std::optional<double> tau2;
  };
  auto add_spec_flags = [](CLI::App* cmd, SpecFlags& flags,
                           bool tau2_required) {
    cmd->add_option("--p", flags.p, "Dimension")->required();
    cmd->add_option("--n", flags.n, "Chi-square dof of S^2")->required();
    cmd->add_option("--sigma2", flags.sigma2, "Sampling variance")
        ->capture_default_str();
    auto* t = cmd->add_option("--tau2", flags.tau2, "Prior variance");
    if (tau2_required) t->required();
  };

  auto* cmd_exact = app.add_subcommand(
      "exact-risk", "Closed-form risk reports for one problem spec");
  SpecFlags exact_spec;
  std::string exact_kinds = "mle,bayes,modified-bayes,empirical-modified-bayes";
  add_spec_flags(cmd_exact, exact_spec, true);
  cmd_exact->add_option("--estimators", exact_kinds,
                        "Comma list (general-c=<c> for the c family)")
      ->capture_default_str();

  auto* cmd_mc = app.add_subcommand(
      "mc-risk", "Monte-Carlo risk estimates with exact cross-checks");
  SpecFlags mc_spec;
  std::string mc_kinds = "mle,bayes,modified-bayes,empirical-modified-bayes";
  std::uint64_t mc_replicates = 100000;
  add_spec_flags(cmd_mc, mc_spec, true);
  cmd_mc->add_option("--estimators", mc_kinds, "Comma list of kinds")
      ->capture_default_str();
  cmd_mc->add_option("--replicates", mc_replicates, "Monte-Carlo replicates")
      ->capture_default_str();

  auto* cmd_minimax = app.add_subcommand(
      "minimax-check", "Minimaxity verdicts for one problem spec");
  SpecFlags minimax_spec;
  std::string minimax_kinds =
      "bayes,modified-bayes,empirical-modified-bayes";
  add_spec_flags(cmd_minimax, minimax_spec, true);
  cmd_minimax->add_option("--estimators", minimax_kinds, "Comma list of kinds")
      ->capture_default_str();

  // ---- curves -------------------------------------------------------------
  auto* cmd_ratio = app.add_subcommand(
      "ratio-curve", "Plug-in rule risk ratio and bracket along a rho grid");
  int ratio_n = 5;
  GridRequest ratio_grid{0.01, 20.0, 200, true};
  cmd_ratio->add_option("--n", ratio_n, "Chi-square dof of S^2")->required();
  cmd_ratio->add_option("--rho-min", ratio_grid.lo, "Smallest tau2/sigma2")
      ->capture_default_str();
  cmd_ratio->add_option("--rho-max", ratio_grid.hi, "Largest tau2/sigma2")
      ->capture_default_str();
  cmd_ratio->add_option("--points", ratio_grid.points, "Grid points (log-spaced)")
      ->capture_default_str();

  auto* cmd_surface = app.add_subcommand(
      "surface", "Risk difference vs the MLE over a (tau2, sigma2) grid");
  int surface_n = 5;
  int surface_p = 10;
  GridRequest surface_tau2{0.1, 10.0, 50, false};
  GridRequest surface_sigma2{0.1, 10.0, 50, false};
  cmd_surface->add_option("--n", surface_n, "Chi-square dof of S^2")->required();
  cmd_surface->add_option("--p", surface_p, "Dimension")->capture_default_str();
  cmd_surface->add_option("--tau2-min", surface_tau2.lo, "Smallest tau2")
      ->capture_default_str();
  cmd_surface->add_option("--tau2-max", surface_tau2.hi, "Largest tau2")
      ->capture_default_str();
  cmd_surface->add_option("--sigma2-min", surface_sigma2.lo, "Smallest sigma2")
      ->capture_default_str();
  cmd_surface->add_option("--sigma2-max", surface_sigma2.hi, "Largest sigma2")
      ->capture_default_str();
  cmd_surface->add_option("--points", surface_tau2.points,
                          "Grid points per axis")
      ->capture_default_str();

  auto* cmd_bound = app.add_subcommand(
      "bound-curve", "Closed-form ratio upper bound minus one along rho");
  int bound_n = 5;
  GridRequest bound_grid{0.01, 20.0, 200, true};
  cmd_bound->add_option("--n", bound_n, "Chi-square dof of S^2")->required();
  cmd_bound->add_option("--rho-min", bound_grid.lo, "Smallest tau2/sigma2")
      ->capture_default_str();
  cmd_bound->add_option("--rho-max", bound_grid.hi, "Largest tau2/sigma2")
      ->capture_default_str();
  cmd_bound->add_option("--points", bound_grid.points, "Grid points (log-spaced)")
      ->capture_default_str();

  auto* cmd_optc = app.add_subcommand(
      "optimal-c", "Risk-minimising shrink constant and numeric cross-check");
  SpecFlags optc_spec;
  optc_spec.tau2 = 1.0;
  cmd_optc->add_option("--p", optc_spec.p, "Dimension")->required();
  cmd_optc->add_option("--n", optc_spec.n, "Chi-square dof of S^2")->required();
  cmd_optc->add_option("--sigma2", optc_spec.sigma2, "Sampling variance")
      ->capture_default_str();
  cmd_optc->add_option("--tau2", optc_spec.tau2, "Prior variance")
      ->capture_default_str();

  auto* cmd_verify = app.add_subcommand(
      "verify-lemmas", "Run every identity/inequality suite over fixed grids");
  shrinkrisk::VerifyOptions verify_options;
  cmd_verify->add_option("--max-dof", verify_options.max_dof,
                         "Largest dof in the grids")
      ->capture_default_str();
  cmd_verify->add_option("--mc-replicates", verify_options.mc_replicates,
                         "Replicates for the Monte-Carlo identity checks")
      ->capture_default_str();
  cmd_verify
      ->add_option("--corrupt-bound", verify_options.corrupt_bound,
                   "Test fixture: break the named bracket check")
      ->group("");  // hidden

  // Global flags (--out, --format, --seed, --threads, --manifest) may appear
  // after the subcommand name; unmatched options fall through to the parent.
  for (CLI::App* sub : {cmd_estimate, cmd_exact, cmd_mc, cmd_minimax,
                        cmd_ratio, cmd_surface, cmd_bound, cmd_optc,
                        cmd_verify}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    if (cmd_estimate->parsed()) {
      const std::vector<double> x = read_vector_file(est_x_file);
      const int p = est_p > 0 ? est_p : static_cast<int>(x.size());
      if (static_cast<std::size_t>(p) != x.size()) {
        throw shrinkrisk::InvalidDimension("--p disagrees with vector length");
      }
      const EstimatorKind kind = EstimatorKind::parse(est_kind);
      ProblemSpec spec;
      spec.p = p;
      spec.n = est_n;
      spec.sigma2 = est_sigma2;
      spec.tau2 = est_tau2;
      if (!est_nu_file.empty()) {
        spec.nu = read_vector_file(est_nu_file);
      } else if (est_nu_zero) {
        spec.nu.assign(x.size(), 0.0);
      } else {
        const bool needs_nu =
            kind.tag != EstimatorKind::Tag::Mle &&
            kind.tag != EstimatorKind::Tag::JamesStein &&
            kind.tag != EstimatorKind::Tag::JamesSteinPlus;
        if (needs_nu) {
          throw shrinkrisk::InvalidInput(
              "choose --nu-file <path> or --nu-zero for " + kind.name());
        }
        spec.nu.assign(x.size(), 0.0);
      }
      const std::vector<double> delta = shrinkrisk::estimate(
          kind, spec, shrinkrisk::Observation{x, est_s2});

      Table table;
      table.meta.emplace_back("command", "estimate");
      table.meta.emplace_back("kind", kind.name());
      add_spec_meta(table, spec);
      table.meta.emplace_back("s2", shrinkrisk::format_double(est_s2));
      table.columns = {"estimate"};
      for (double v : delta) table.rows.push_back({v});
      emit(table, global, "estimate");
      return kExitOk;
    }

    if (cmd_exact->parsed()) {
      const ProblemSpec spec = shrinkrisk::make_spec(
          exact_spec.p, exact_spec.n, exact_spec.sigma2, exact_spec.tau2);
      Table table;
      table.meta.emplace_back("command", "exact-risk");
      add_spec_meta(table, spec);
      table.columns = {"kind",        "risk",    "ratio", "lower_bound",
                       "upper_bound", "minimax", "limit_ratio"};
      for (const EstimatorKind& kind : parse_kind_list(exact_kinds)) {
        const RiskReport report = closed_form_report(kind, spec);
        table.rows.push_back(
            {kind.name(), report.risk, report.ratio,
             report.lower_bound ? Table::Cell{*report.lower_bound}
                                : Table::Cell{std::string()},
             report.upper_bound ? Table::Cell{*report.upper_bound}
                                : Table::Cell{std::string()},
             to_string(report.minimax), report.limit_ratio});
      }
      emit(table, global, "exact-risk");
      return kExitOk;
    }

    if (cmd_mc->parsed()) {
      shrinkrisk::McConfig config;
      config.spec = shrinkrisk::make_spec(mc_spec.p, mc_spec.n,
                                          mc_spec.sigma2, mc_spec.tau2);
      config.estimators = parse_kind_list(mc_kinds);
      config.replicates = mc_replicates;
      config.seed = global.seed;
      config.threads = global.threads;
      const shrinkrisk::McRun run = shrinkrisk::empirical_risk(config);

      Table table;
      table.meta.emplace_back("command", "mc-risk");
      add_spec_meta(table, config.spec);
      table.meta.emplace_back("replicates", std::to_string(mc_replicates));
      table.meta.emplace_back("seed", std::to_string(global.seed));
      table.meta.emplace_back("resamples", std::to_string(run.resamples));
      table.columns = {"kind", "mse_mean", "std_error", "exact_risk",
                       "z_score"};
      for (const auto& est : run.estimates) {
        Table::Cell exact{std::string()};
        Table::Cell z{std::string()};
        if (has_closed_form(est.estimator)) {
          const double exact_risk =
              closed_form_report(est.estimator, config.spec).risk;
          exact = exact_risk;
          if (est.std_error > 0.0) {
            z = (est.mse_mean - exact_risk) / est.std_error;
          }
        }
        table.rows.push_back({est.estimator.name(), est.mse_mean,
                              est.std_error, exact, z});
      }
      emit(table, global, "mc-risk");
      return kExitOk;
    }

    if (cmd_minimax->parsed()) {
      const ProblemSpec spec = shrinkrisk::make_spec(
          minimax_spec.p, minimax_spec.n, minimax_spec.sigma2,
          minimax_spec.tau2);
      Table table;
      table.meta.emplace_back("command", "minimax-check");
      add_spec_meta(table, spec);
      table.columns = {"kind", "n", "p", "rho", "ratio", "verdict"};
      for (const EstimatorKind& kind : parse_kind_list(minimax_kinds)) {
        const RiskReport report = closed_form_report(kind, spec);
        table.rows.push_back({kind.name(),
                              static_cast<std::int64_t>(spec.n),
                              static_cast<std::int64_t>(spec.p), spec.rho(),
                              report.ratio, to_string(report.minimax)});
      }
      emit(table, global, "minimax-check");
      return kExitOk;
    }

    if (cmd_ratio->parsed()) {
      const std::vector<double> grid = shrinkrisk::make_grid(ratio_grid);
      const auto points =
          shrinkrisk::ratio_curve(ratio_n, grid, global.threads);
      Table table;
      table.meta.emplace_back("command", "ratio-curve");
      table.meta.emplace_back("n", std::to_string(ratio_n));
      table.meta.emplace_back("rho_min", shrinkrisk::format_double(ratio_grid.lo));
      table.meta.emplace_back("rho_max", shrinkrisk::format_double(ratio_grid.hi));
      table.meta.emplace_back("points", std::to_string(ratio_grid.points));
      table.meta.emplace_back("spacing", "log");
      table.columns = {"rho", "ratio", "lower_bound", "upper_bound"};
      for (const auto& pt : points) {
        table.rows.push_back({pt.rho, pt.ratio, pt.lower_bound, pt.upper_bound});
      }
      emit(table, global, "ratio-curve");
      return kExitOk;
    }

    if (cmd_surface->parsed()) {
      surface_sigma2.points = surface_tau2.points;
      const std::vector<double> tau2_grid = shrinkrisk::make_grid(surface_tau2);
      const std::vector<double> sigma2_grid =
          shrinkrisk::make_grid(surface_sigma2);
      const auto cells = shrinkrisk::risk_difference_surface(
          surface_n, surface_p, tau2_grid, sigma2_grid, global.threads);
      Table table;
      table.meta.emplace_back("command", "surface");
      table.meta.emplace_back("n", std::to_string(surface_n));
      table.meta.emplace_back("p", std::to_string(surface_p));
      table.meta.emplace_back("tau2_min", shrinkrisk::format_double(surface_tau2.lo));
      table.meta.emplace_back("tau2_max", shrinkrisk::format_double(surface_tau2.hi));
      table.meta.emplace_back("sigma2_min",
                              shrinkrisk::format_double(surface_sigma2.lo));
      table.meta.emplace_back("sigma2_max",
                              shrinkrisk::format_double(surface_sigma2.hi));
      table.meta.emplace_back("points_per_axis",
                              std::to_string(surface_tau2.points));
      table.meta.emplace_back("spacing", "linear");
      table.columns = {"tau2", "sigma2", "risk_diff"};
      for (const auto& cell : cells) {
        table.rows.push_back({cell.tau2, cell.sigma2, cell.risk_diff});
      }
      emit(table, global, "surface");
      return kExitOk;
    }

    if (cmd_bound->parsed()) {
      const std::vector<double> grid = shrinkrisk::make_grid(bound_grid);
      const auto points = shrinkrisk::bound_curve(bound_n, grid);
      Table table;
      table.meta.emplace_back("command", "bound-curve");
      table.meta.emplace_back("n", std::to_string(bound_n));
      table.meta.emplace_back("rho_min", shrinkrisk::format_double(bound_grid.lo));
      table.meta.emplace_back("rho_max", shrinkrisk::format_double(bound_grid.hi));
      table.meta.emplace_back("points", std::to_string(bound_grid.points));
      table.meta.emplace_back("spacing", "log");
      table.columns = {"rho", "upper_bound_minus_one"};
      for (const auto& pt : points) {
        table.rows.push_back({pt.rho, pt.bound_minus_one});
      }
      emit(table, global, "bound-curve");
      return kExitOk;
    }

    if (cmd_optc->parsed()) {
      const ProblemSpec spec = shrinkrisk::make_spec(
          optc_spec.p, optc_spec.n, optc_spec.sigma2, optc_spec.tau2);
      const double c_numeric = shrinkrisk::optimal_c_numeric(spec);
      const double c_opt = shrinkrisk::optimal_c(spec);
      Table table;
      table.meta.emplace_back("command", "optimal-c");
      add_spec_meta(table, spec);
      table.columns = {"p", "n", "c_opt", "c_numeric", "c_minimax_max"};
      table.rows.push_back({static_cast<std::int64_t>(spec.p),
                            static_cast<std::int64_t>(spec.n), c_opt,
                            c_numeric,
                            2.0 * (spec.p - 2.0) / (spec.n + 2.0)});
      emit(table, global, "optimal-c");
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      verify_options.seed = global.seed;
      verify_options.threads = global.threads;
      const shrinkrisk::VerifyReport report =
          shrinkrisk::verify_lemmas(verify_options);
      Table table;
      table.meta.emplace_back("command", "verify-lemmas");
      table.meta.emplace_back("max_dof",
                              std::to_string(verify_options.max_dof));
      table.meta.emplace_back("mc_replicates",
                              std::to_string(verify_options.mc_replicates));
      table.meta.emplace_back("seed", std::to_string(verify_options.seed));
      table.meta.emplace_back("checks_run", std::to_string(report.checks_run));
      table.meta.emplace_back("failures", std::to_string(report.failures));
      table.columns = {"check", "point", "margin", "status"};
      for (const auto& row : report.rows) {
        table.rows.push_back({row.check, row.point, row.margin,
                              std::string(row.pass ? "pass" : "fail")});
      }
      emit(table, global, "verify-lemmas");
      return report.failures == 0 ? kExitOk : kExitInvariantViolation;
    }

    throw shrinkrisk::InvalidInput("no subcommand given");
  } catch (const shrinkrisk::ConsistencyError& e) {
    std::cerr << "internal consistency violation: " << e.what() << "\n";
    return kExitInvariantViolation;
  } catch (const shrinkrisk::NonConvergence& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitInvariantViolation;
  } catch (const shrinkrisk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}
