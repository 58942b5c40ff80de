#include "shrinkrisk/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shrinkrisk/parallel.hpp"

namespace shrinkrisk {
namespace {

constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

constexpr std::size_t kBlock = 4096;

// Pairwise tree over fixed-index blocks; the combination order depends only
// on the block count, never on thread scheduling.
template <typename T, typename Combine>
T tree_reduce(std::vector<T>& items, const Combine& combine) {
  for (std::size_t step = 1; step < items.size(); step *= 2) {
    for (std::size_t i = 0; i + step < items.size(); i += 2 * step) {
      combine(items[i], items[i + step]);
    }
  }
  return items.empty() ? T{} : items[0];
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t replicate,
                       std::uint32_t role, std::uint32_t attempt) {
  std::uint64_t k = mix64(seed ^ 0x6A09E667F3BCC909ull);
  k = mix64(k ^ (kWeyl * (replicate + 1)));
  k = mix64(k ^ (0xBF58476D1CE4E5B9ull * (role + 1) +
                 0x94D049BB133111EBull * (static_cast<std::uint64_t>(attempt) + 1)));
  state_ = k;
}

std::uint64_t CounterRng::next_u64() {
  state_ += kWeyl;
  return mix64(state_);
}

double CounterRng::uniform() {
  // 53-bit mantissa shifted into (0, 1]; never zero, so logs are safe.
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

double CounterRng::gamma(double alpha) {
  // Marsaglia-Tsang squeeze, valid for alpha >= 1.
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double CounterRng::chi_square(int dof) {
  if (dof < 1) throw InvalidInput("chi-square dof must be >= 1");
  if (dof <= 64) {
    double s = 0.0;
    for (int i = 0; i < dof; ++i) {
      const double z = normal();
      s += z * z;
    }
    return s;
  }
  return 2.0 * gamma(0.5 * dof);
}

namespace {

void draw_into(const ProblemSpec& spec, std::uint64_t seed,
               std::uint64_t replicate, std::uint32_t attempt,
               std::vector<double>& theta, std::vector<double>& x,
               double& s2) {
  const std::size_t p = static_cast<std::size_t>(spec.p);
  const double tau = std::sqrt(spec.tau2_value());
  const double sd = std::sqrt(spec.sigma2);

  CounterRng prior(seed, replicate, kRolePrior, attempt);
  CounterRng noise(seed, replicate, kRoleNoise, attempt);
  CounterRng variance(seed, replicate, kRoleVariance, attempt);

  theta.resize(p);
  x.resize(p);
  for (std::size_t i = 0; i < p; ++i) {
    theta[i] = spec.nu[i] + tau * prior.normal();
  }
  for (std::size_t i = 0; i < p; ++i) {
    x[i] = theta[i] + sd * noise.normal();
  }
  s2 = spec.sigma2 * variance.chi_square(spec.n);
}

}  // namespace

SimulationDraw draw(const ProblemSpec& spec, std::uint64_t seed,
                    std::uint64_t replicate, std::uint32_t attempt) {
  validate(spec);
  SimulationDraw out;
  draw_into(spec, seed, replicate, attempt, out.theta, out.x, out.s2);
  return out;
}

McRun empirical_risk(const McConfig& config) {
  validate(config.spec);
  config.spec.tau2_value();  // drawing requires a known tau2
  if (config.replicates < 1) throw InvalidInput("replicates must be >= 1");
  if (config.estimators.empty()) {
    throw InvalidInput("at least one estimator kind is required");
  }
  for (const auto& kind : config.estimators) {
    if (kind.tag == EstimatorKind::Tag::EmpiricalModifiedBayes &&
        config.spec.p < 3) {
      throw InvalidDimension("empirical-modified-bayes requires p >= 3");
    }
  }

  const std::uint64_t n_rep = config.replicates;
  const std::size_t kinds = config.estimators.size();
  const std::size_t blocks =
      static_cast<std::size_t>((n_rep + kBlock - 1) / kBlock);

  struct Acc {
    double sum = 0.0;
    double sumsq = 0.0;
  };
  struct BlockResult {
    std::vector<Acc> acc;
    std::uint64_t resamples = 0;
  };
  std::vector<BlockResult> partial(blocks);

  parallel_for(blocks, config.threads, [&](std::size_t bi) {
    BlockResult local;
    local.acc.assign(kinds, Acc{});
    std::vector<double> theta;
    std::vector<double> x;
    std::vector<double> delta(static_cast<std::size_t>(config.spec.p));
    std::vector<double> sqerr(kinds);

    const std::uint64_t begin = static_cast<std::uint64_t>(bi) * kBlock;
    const std::uint64_t end = std::min<std::uint64_t>(begin + kBlock, n_rep);
    for (std::uint64_t rep = begin; rep < end; ++rep) {
      std::uint32_t attempt = 0;
      for (;;) {
        double s2 = 0.0;
        draw_into(config.spec, config.seed, rep, attempt, theta, x, s2);
        const Observation obs{std::span<const double>(x), s2};
        bool zero_norm = false;
        for (std::size_t k = 0; k < kinds; ++k) {
          try {
            estimate_into(config.estimators[k], config.spec, obs, delta);
          } catch (const DivisionByZero&) {
            zero_norm = true;
            break;
          }
          double e = 0.0;
          for (std::size_t i = 0; i < delta.size(); ++i) {
            const double d = delta[i] - theta[i];
            e += d * d;
          }
          sqerr[k] = e;
        }
        if (!zero_norm) break;
        // Probability-zero event in exact arithmetic; redraw this replicate
        // from a fresh attempt-keyed substream.
        ++local.resamples;
        ++attempt;
        if (attempt > 100) {
          throw NonConvergence("empirical_risk: persistent zero-norm draws");
        }
      }
      for (std::size_t k = 0; k < kinds; ++k) {
        local.acc[k].sum += sqerr[k];
        local.acc[k].sumsq += sqerr[k] * sqerr[k];
      }
    }
    partial[bi] = std::move(local);
  });

  BlockResult totals = tree_reduce(partial, [&](BlockResult& a, BlockResult& b) {
    for (std::size_t k = 0; k < a.acc.size(); ++k) {
      a.acc[k].sum += b.acc[k].sum;
      a.acc[k].sumsq += b.acc[k].sumsq;
    }
    a.resamples += b.resamples;
  });

  McRun run;
  run.resamples = totals.resamples;
  run.estimates.reserve(kinds);
  const double n = static_cast<double>(n_rep);
  for (std::size_t k = 0; k < kinds; ++k) {
    McEstimate est;
    est.estimator = config.estimators[k];
    est.replicates = n_rep;
    est.seed = config.seed;
    est.mse_mean = totals.acc[k].sum / n;
    if (n_rep > 1) {
      const double var = std::max(
          0.0, (totals.acc[k].sumsq - n * est.mse_mean * est.mse_mean) /
                   (n - 1.0));
      est.std_error = std::sqrt(var / n);
    }
    run.estimates.push_back(est);
  }
  return run;
}

SteinCheck stein_identity_check(const std::function<double(double)>& g,
                                const std::function<double(double)>& g_prime,
                                std::uint64_t replicates, std::uint64_t seed,
                                int threads) {
  if (replicates < 2) throw InvalidInput("replicates must be >= 2");

  const std::size_t blocks =
      static_cast<std::size_t>((replicates + kBlock - 1) / kBlock);
  struct Sums {
    double lhs = 0.0, rhs = 0.0, diff = 0.0, diff_sq = 0.0;
  };
  std::vector<Sums> partial(blocks);

  parallel_for(blocks, threads, [&](std::size_t bi) {
    Sums local;
    const std::uint64_t begin = static_cast<std::uint64_t>(bi) * kBlock;
    const std::uint64_t end =
        std::min<std::uint64_t>(begin + kBlock, replicates);
    for (std::uint64_t rep = begin; rep < end; ++rep) {
      CounterRng rng(seed, rep, kRoleStein);
      const double y = rng.normal();
      const double lhs = y * g(y);
      const double rhs = g_prime(y);
      local.lhs += lhs;
      local.rhs += rhs;
      const double d = lhs - rhs;
      local.diff += d;
      local.diff_sq += d * d;
    }
    partial[bi] = local;
  });

  Sums totals = tree_reduce(partial, [](Sums& a, Sums& b) {
    a.lhs += b.lhs;
    a.rhs += b.rhs;
    a.diff += b.diff;
    a.diff_sq += b.diff_sq;
  });

  const double n = static_cast<double>(replicates);
  SteinCheck out;
  out.lhs = totals.lhs / n;
  out.rhs = totals.rhs / n;
  const double mean_d = totals.diff / n;
  const double var_d =
      std::max(0.0, (totals.diff_sq - n * mean_d * mean_d) / (n - 1.0));
  const double se = std::sqrt(var_d / n);
  out.z = se > 0.0 ? mean_d / se : 0.0;
  return out;
}

}  // namespace shrinkrisk
