#include "shrinkrisk/reports.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "shrinkrisk/monte_carlo.hpp"
#include "shrinkrisk/parallel.hpp"

namespace shrinkrisk {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string cell_text(const Table::Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) return format_double(*d);
  if (const std::int64_t* i = std::get_if<std::int64_t>(&cell)) {
    return std::to_string(*i);
  }
  return std::get<std::string>(cell);
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (const auto& [key, value] : table.meta) {
    out << "# " << key << "=" << value << "\n";
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ",";
    out << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << cell_text(row[i]);
    }
    out << "\n";
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) meta[key] = value;
  doc["meta"] = std::move(meta);
  doc["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (const double* d = std::get_if<double>(&cell)) {
        jrow.push_back(*d);
      } else if (const std::int64_t* i = std::get_if<std::int64_t>(&cell)) {
        jrow.push_back(*i);
      } else {
        jrow.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(jrow));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << "\n";
}

std::vector<double> make_grid(const GridRequest& request) {
  if (request.points < 2) throw InvalidInput("grid needs at least 2 points");
  if (!(request.lo < request.hi)) throw InvalidInput("grid needs lo < hi");
  if (request.log_scale && !(request.lo > 0.0)) {
    throw InvalidInput("log grid needs lo > 0");
  }
  std::vector<double> grid(static_cast<std::size_t>(request.points));
  const double m = request.points - 1.0;
  for (int i = 0; i < request.points; ++i) {
    if (request.log_scale) {
      grid[static_cast<std::size_t>(i)] =
          request.lo * std::pow(request.hi / request.lo, i / m);
    } else {
      grid[static_cast<std::size_t>(i)] =
          request.lo + (request.hi - request.lo) * (i / m);
    }
  }
  grid.front() = request.lo;
  grid.back() = request.hi;
  return grid;
}

std::vector<RatioCurvePoint> ratio_curve(int n,
                                         const std::vector<double>& rho_grid,
                                         int threads) {
  std::vector<RatioCurvePoint> out(rho_grid.size());
  parallel_for(rho_grid.size(), threads, [&](std::size_t i) {
    // The ratio depends on (n, rho) only; p and sigma2 cancel.
    const ProblemSpec spec = make_spec(3, n, 1.0, rho_grid[i]);
    const RiskReport report = risk_modified_bayes(spec);
    out[i] = {rho_grid[i], report.ratio, *report.lower_bound,
              *report.upper_bound};
  });
  return out;
}

std::vector<SurfaceCell> risk_difference_surface(
    int n, int p, const std::vector<double>& tau2_grid,
    const std::vector<double>& sigma2_grid, int threads) {
  std::vector<SurfaceCell> out(tau2_grid.size() * sigma2_grid.size());
  parallel_for(tau2_grid.size(), threads, [&](std::size_t ti) {
    for (std::size_t si = 0; si < sigma2_grid.size(); ++si) {
      const ProblemSpec spec =
          make_spec(p, n, sigma2_grid[si], tau2_grid[ti]);
      const RiskReport report = risk_modified_bayes(spec);
      out[ti * sigma2_grid.size() + si] = {
          tau2_grid[ti], sigma2_grid[si], report.risk - risk_mle(spec)};
    }
  });
  return out;
}

std::vector<BoundCurvePoint> bound_curve(int n,
                                         const std::vector<double>& rho_grid) {
  std::vector<BoundCurvePoint> out;
  out.reserve(rho_grid.size());
  for (double rho : rho_grid) {
    out.push_back({rho, upper_bound_curve(n, rho)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// verify_lemmas

namespace {

struct PointResult {
  std::string point;
  double margin = 0.0;
};

// Runs one suite over `count` grid points and appends its rows to `report`:
// failing points first (grid order), then a summary row carrying the worst
// margin across the suite.
void run_suite(VerifyReport& report, const std::string& name,
               std::size_t count, int threads,
               const std::function<PointResult(std::size_t)>& eval) {
  std::vector<PointResult> results(count);
  parallel_for(count, threads,
               [&](std::size_t i) { results[i] = eval(i); });

  double worst = std::numeric_limits<double>::infinity();
  std::int64_t failures = 0;
  for (const auto& r : results) {
    worst = std::min(worst, r.margin);
    if (!(r.margin >= 0.0)) {
      ++failures;
      report.rows.push_back({name, r.point, r.margin, false});
    }
  }
  report.rows.push_back({name, "summary", worst, failures == 0});
  report.checks_run += static_cast<std::int64_t>(count);
  report.failures += failures;
}

std::string point_label(const char* fmt, double a, double b = 0.0,
                        double c = 0.0) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

}  // namespace

VerifyReport verify_lemmas(const VerifyOptions& options) {
  if (options.max_dof < 1) throw InvalidInput("max_dof must be >= 1");
  if (!options.corrupt_bound.empty() &&
      options.corrupt_bound != "inverse-shift-bracket" &&
      options.corrupt_bound != "inverse-shift-square-bracket") {
    throw InvalidInput("unknown bracket check: " + options.corrupt_bound);
  }
  VerifyReport report;
  const int q_max = options.max_dof;
  const auto& lambdas = options.lambda_grid;
  const auto& shifts = options.shift_grid;

  // Expectations of 1/(u+c) are non-increasing in the dof.
  {
    struct Task {
      double lambda, c;
    };
    std::vector<Task> tasks;
    for (double lambda : lambdas) {
      for (double c : shifts) tasks.push_back({lambda, c});
    }
    // One grid point per (q, lambda, c) triple; evaluated per (lambda, c)
    // column so each expectation is computed once.
    std::vector<std::vector<double>> margins(tasks.size());
    parallel_for(tasks.size(), options.threads, [&](std::size_t ti) {
      const double lambda = tasks[ti].lambda;
      const double c = tasks[ti].c;
      std::vector<double> vals(static_cast<std::size_t>(q_max) + 2);
      for (int q = 1; q <= q_max + 2; ++q) {
        vals[static_cast<std::size_t>(q - 1)] = noncentral_expectation(
            [c](double u) { return 1.0 / (u + c); }, ChiSquareLaw{q, lambda},
            options.rel_tol, options.series_tail_mass);
      }
      std::vector<double> m(static_cast<std::size_t>(q_max));
      for (int q = 1; q <= q_max; ++q) {
        const double lo = vals[static_cast<std::size_t>(q - 1)];
        const double hi = vals[static_cast<std::size_t>(q + 1)];
        m[static_cast<std::size_t>(q - 1)] =
            (lo - hi) / lo + options.bracket_slack;
      }
      margins[ti] = std::move(m);
    });
    std::vector<PointResult> flat;
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
      for (int q = 1; q <= q_max; ++q) {
        flat.push_back(
            {point_label("q=%.0f lambda=%g c=%g", q, tasks[ti].lambda,
                         tasks[ti].c),
             margins[ti][static_cast<std::size_t>(q - 1)]});
      }
    }
    run_suite(report, "dof-monotonicity", flat.size(), 1,
              [&](std::size_t i) { return flat[i]; });
  }

  // Bracket 1/(n+2+c) <= E_{chi2_{n+2}}[1/(u+c)] <= 1/(n+c).
  {
    struct Task {
      int n;
      double c;
    };
    std::vector<Task> tasks;
    for (int n = 1; n <= q_max; ++n) {
      for (double c : shifts) tasks.push_back({n, c});
    }
    const double ub_factor =
        options.corrupt_bound == "inverse-shift-bracket" ? 0.95 : 1.0;
    run_suite(report, "inverse-shift-bracket", tasks.size(), options.threads,
              [&](std::size_t i) -> PointResult {
                const auto [n, c] = tasks[i];
                const double e = expect_inv_shift(n + 2, c, options.rel_tol);
                const double lb = 1.0 / (n + 2.0 + c);
                const double ub = ub_factor / (n + c);
                const double margin =
                    std::min(e - lb, ub - e) / e + options.bracket_slack;
                return {point_label("n=%.0f c=%g", n, c), margin};
              });
  }

  // Bracket 1/(n+4+c)^2 <= E_{chi2_{n+4}}[1/(u+c)^2] <= 1/(n+c)^2.
  {
    struct Task {
      int n;
      double c;
    };
    std::vector<Task> tasks;
    for (int n = 1; n <= q_max; ++n) {
      for (double c : shifts) tasks.push_back({n, c});
    }
    // The squared bound has ~2/n of genuine headroom at small dof, so the
    // injected fault must be larger than the linear check's to be visible on
    // reduced grids.
    const double ub_factor =
        options.corrupt_bound == "inverse-shift-square-bracket" ? 0.75 : 1.0;
    run_suite(report, "inverse-shift-square-bracket", tasks.size(),
              options.threads, [&](std::size_t i) -> PointResult {
                const auto [n, c] = tasks[i];
                const double e =
                    expect_inv_shift_sq(n + 4, c, options.rel_tol);
                const double lb = 1.0 / ((n + 4.0 + c) * (n + 4.0 + c));
                const double ub = ub_factor / ((n + c) * (n + c));
                const double margin =
                    std::min(e - lb, ub - e) / e + options.bracket_slack;
                return {point_label("n=%.0f c=%g", n, c), margin};
              });
  }

  // E[U h(U)] = q E_{q+2}[h] + 2 lambda E_{q+4}[h].
  {
    struct H {
      const char* name;
      std::function<double(double)> h;
    };
    const std::vector<H> hs = {
        {"h=1", [](double) { return 1.0; }},
        {"h=1/(u+1)", [](double u) { return 1.0 / (u + 1.0); }},
        {"h=1/(u+2)", [](double u) { return 1.0 / (u + 2.0); }},
    };
    struct Task {
      std::size_t hi;
      int q;
      double lambda;
    };
    std::vector<Task> tasks;
    for (std::size_t hi = 0; hi < hs.size(); ++hi) {
      for (double lambda : lambdas) {
        for (int q = 1; q <= q_max; ++q) tasks.push_back({hi, q, lambda});
      }
    }
    run_suite(report, "dof-recurrence", tasks.size(), options.threads,
              [&](std::size_t i) -> PointResult {
                const auto& task = tasks[i];
                const auto& h = hs[task.hi].h;
                const double residual = chi2_recurrence_check(
                    h, task.q, task.lambda, options.rel_tol,
                    options.series_tail_mass);
                const double scale = std::abs(noncentral_expectation(
                    [&](double u) { return u * h(u); },
                    ChiSquareLaw{task.q, task.lambda}, options.rel_tol,
                    options.series_tail_mass));
                const double rel = std::abs(residual) / scale;
                return {point_label("q=%.0f lambda=%g ", task.q, task.lambda) +
                            hs[task.hi].name,
                        options.recurrence_tol - rel};
              });
  }

  // The lambda = 0 mixture must coincide with the central expectation.
  {
    run_suite(report, "mixture-consistency",
              static_cast<std::size_t>(q_max), options.threads,
              [&](std::size_t i) -> PointResult {
                const int q = static_cast<int>(i) + 1;
                auto f = [](double u) { return 1.0 / (u + 1.0); };
                const double central =
                    central_expectation(f, q, options.rel_tol);
                const double mixed = noncentral_expectation(
                    f, ChiSquareLaw{q, 0.0}, options.rel_tol,
                    options.series_tail_mass);
                const double rel = std::abs(mixed - central) /
                                   std::abs(central);
                return {point_label("q=%.0f", q), options.mixture_tol - rel};
              });
  }

  // The reported truncated Poisson mass must respect the requested budget.
  {
    struct Task {
      int q;
      double lambda;
    };
    std::vector<Task> tasks;
    for (int q : {3, 10}) {
      for (double lambda : {0.5, 1.0, 5.0, 20.0, 100.0}) {
        tasks.push_back({q, lambda});
      }
    }
    run_suite(report, "poisson-truncation", tasks.size(), options.threads,
              [&](std::size_t i) -> PointResult {
                const auto [q, lambda] = tasks[i];
                const SeriesExpectation diag = noncentral_expectation_diag(
                    [](double u) { return 1.0 / (u + 1.0); },
                    ChiSquareLaw{q, lambda}, options.rel_tol,
                    options.series_tail_mass);
                const double margin =
                    (options.series_tail_mass - diag.tail_mass) /
                    options.series_tail_mass;
                return {point_label("q=%.0f lambda=%g", q, lambda), margin};
              });
  }

  // E[Y g(Y)] = E[g'(Y)] for Y ~ N(0,1), checked by paired z-score.
  {
    struct G {
      const char* name;
      std::function<double(double)> g;
      std::function<double(double)> gp;
    };
    const std::vector<G> gs = {
        {"g=y", [](double y) { return y; }, [](double) { return 1.0; }},
        {"g=y^3", [](double y) { return y * y * y; },
         [](double y) { return 3.0 * y * y; }},
        {"g=y/(1+y^2)", [](double y) { return y / (1.0 + y * y); },
         [](double y) {
           const double d = 1.0 + y * y;
           return (1.0 - y * y) / (d * d);
         }},
    };
    run_suite(report, "stein-identity", gs.size(), 1,
              [&](std::size_t i) -> PointResult {
                const SteinCheck check = stein_identity_check(
                    gs[i].g, gs[i].gp, options.mc_replicates,
                    options.seed + i, options.threads);
                return {gs[i].name, options.z_limit - std::abs(check.z)};
              });
  }

  return report;
}

}  // namespace shrinkrisk
