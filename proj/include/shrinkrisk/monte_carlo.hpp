#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "shrinkrisk/estimators.hpp"

namespace shrinkrisk {

// Deterministic counter-based stream: each (seed, replicate, role, attempt)
// tuple seeds an independent substream, so results never depend on how
// replicates are scheduled across threads. The generator is a splitmix64
// counter (Weyl increment + avalanche finalizer).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t replicate, std::uint32_t role,
             std::uint32_t attempt = 0);

  std::uint64_t next_u64();
  double uniform();  // (0, 1]
  double normal();   // standard normal, Box-Muller with cached spare
  // chi^2_dof: sum of dof squared normals for dof <= 64, otherwise
  // 2 * Gamma(dof/2, 1) by Marsaglia-Tsang rejection.
  double chi_square(int dof);

 private:
  double gamma(double alpha);  // alpha >= 1

  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Stream roles; resample attempts shift all roles jointly.
enum : std::uint32_t {
  kRolePrior = 1,     // theta | nu
  kRoleNoise = 2,     // X | theta
  kRoleVariance = 3,  // S^2
  kRoleStein = 4,
};

struct SimulationDraw {
  std::vector<double> theta;
  std::vector<double> x;
  double s2 = 0.0;
};

// One draw of (theta, x, s2) from the model. Requires tau2 known; tau2 = 0
// gives theta = nu exactly on every draw.
SimulationDraw draw(const ProblemSpec& spec, std::uint64_t seed,
                    std::uint64_t replicate, std::uint32_t attempt = 0);

struct McConfig {
  ProblemSpec spec;
  std::vector<EstimatorKind> estimators;
  std::uint64_t replicates = 1;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: hardware concurrency
};

struct McEstimate {
  EstimatorKind estimator;
  double mse_mean = 0.0;
  double std_error = 0.0;  // sample std of per-replicate ||delta-theta||^2 / sqrt(N)
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
};

struct McRun {
  std::vector<McEstimate> estimates;  // one per requested kind, same order
  std::uint64_t resamples = 0;        // replicates redrawn after an exact-zero norm
};

// Empirical quadratic risk of each requested estimator under common random
// numbers (all kinds see the identical draw in each replicate). Per-replicate
// squared errors are accumulated in fixed 4096-replicate blocks and combined
// by a pairwise tree, so the result is bit-identical for any thread count.
McRun empirical_risk(const McConfig& config);

struct SteinCheck {
  double lhs = 0.0;  // mean of Y g(Y)
  double rhs = 0.0;  // mean of g'(Y)
  double z = 0.0;    // paired z-score of the difference
};

// Monte-Carlo check of E[Y g(Y)] = E[g'(Y)] for Y standard normal.
SteinCheck stein_identity_check(const std::function<double(double)>& g,
                                const std::function<double(double)>& g_prime,
                                std::uint64_t replicates, std::uint64_t seed,
                                int threads = 0);

}  // namespace shrinkrisk
