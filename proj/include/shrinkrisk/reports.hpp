#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "shrinkrisk/risk.hpp"

namespace shrinkrisk {

inline constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Tabular output shared by the CLI subcommands. Doubles are rendered with 17
// significant digits so identical inputs produce byte-identical files.

std::string format_double(double v);  // %.17g

struct Table {
  using Cell = std::variant<double, std::int64_t, std::string>;

  std::vector<std::pair<std::string, std::string>> meta;  // emitted in order
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

// ---------------------------------------------------------------------------
// Grids

struct GridRequest {
  double lo = 0.0;
  double hi = 1.0;
  int points = 2;
  bool log_scale = false;
};

// points >= 2, lo < hi (and lo > 0 for log grids); endpoints included.
std::vector<double> make_grid(const GridRequest& request);

// ---------------------------------------------------------------------------
// Figure-style sweeps

struct RatioCurvePoint {
  double rho = 0.0;
  double ratio = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
};

// Exact plug-in-rule risk ratio with its closed-form bracket along a rho
// grid (the ratio depends on (n, rho) only).
std::vector<RatioCurvePoint> ratio_curve(int n, const std::vector<double>& rho_grid,
                                         int threads = 0);

struct SurfaceCell {
  double tau2 = 0.0;
  double sigma2 = 0.0;
  double risk_diff = 0.0;  // risk - p*sigma2
};

// Risk difference of the plug-in rule against the MLE over a
// (tau2, sigma2) grid at fixed (n, p); row-major in tau2 then sigma2.
std::vector<SurfaceCell> risk_difference_surface(
    int n, int p, const std::vector<double>& tau2_grid,
    const std::vector<double>& sigma2_grid, int threads = 0);

struct BoundCurvePoint {
  double rho = 0.0;
  double bound_minus_one = 0.0;  // upper_bound_curve(n, rho)
};

std::vector<BoundCurvePoint> bound_curve(int n,
                                         const std::vector<double>& rho_grid);

// ---------------------------------------------------------------------------
// Identity verification harness

struct VerifyOptions {
  int max_dof = 60;                          // q grid is 1..max_dof
  std::vector<double> lambda_grid = {0.0, 1.0, 5.0, 20.0};
  std::vector<double> shift_grid = {0.01, 0.1, 1.0, 10.0, 100.0};
  double rel_tol = kDefaultRelTol;
  double series_tail_mass = kDefaultSeriesTailMass;
  double bracket_slack = 1e-9;      // numeric slack on strict inequalities
  double recurrence_tol = 1e-8;     // relative residual limit
  double mixture_tol = 1e-12;       // lambda = 0 vs central, relative
  double z_limit = 4.0;             // Stein identity z-score limit
  std::uint64_t mc_replicates = 1000000;
  std::uint64_t seed = 20260815;
  int threads = 0;
  // Test fixture: deliberately breaks the named bracket check so the harness
  // provably reports failures. Accepts "inverse-shift-bracket" or
  // "inverse-shift-square-bracket".
  std::string corrupt_bound;
};

struct CheckRow {
  std::string check;   // e.g. "dof-monotonicity"
  std::string point;   // grid point, e.g. "q=12 lambda=5 c=0.1"
  double margin = 0.0; // signed slack; negative means violated
  bool pass = true;
};

struct VerifyReport {
  std::vector<CheckRow> rows;  // one summary row per check + failing points
  std::int64_t checks_run = 0;
  std::int64_t failures = 0;
};

// Runs every identity/inequality suite (dof monotonicity, inverse-shift
// brackets, dof recurrence, central/noncentral mixture consistency, Poisson
// truncation accounting, Stein identity) over deterministic grids.
VerifyReport verify_lemmas(const VerifyOptions& options = {});

}  // namespace shrinkrisk
