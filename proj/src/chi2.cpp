#include "shrinkrisk/chi2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

namespace shrinkrisk {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gauss-7 / Kronrod-15 nodes and weights on [-1, 1] (QUADPACK dqk15).
// kXgk holds the nonnegative Kronrod abscissae; odd indices (plus the
// midpoint) are the embedded Gauss-7 abscissae.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
  double a = 0.0, b = 0.0;
  double value = 0.0;
  double err = 0.0;
  double resabs = 0.0;

  bool operator<(const Segment& other) const { return err < other.err; }
};

template <typename F>
Segment evaluate_segment(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv1[7];
  double fv2[7];
  const double fc = f(center);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const double fsum = fv1[j] + fv2[j];
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }

  Segment seg;
  seg.a = a;
  seg.b = b;
  seg.value = resk * half;
  seg.resabs = resabs * half;
  const double asc = resasc * half;
  double err = std::abs((resk - resg) * half);
  if (asc != 0.0 && err != 0.0) {
    err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  }
  // Roundoff floor: no segment can promise better than ~50 eps of its L1 mass.
  err = std::max(err, 50.0 * kEps * seg.resabs);
  seg.err = err;
  return seg;
}

// Adaptive worst-first refinement over an initial partition of (lo, hi).
template <typename F>
double adaptive_integrate(const F& f, const std::vector<double>& breakpoints,
                          double rel_tol, int max_segments,
                          const char* what) {
  std::priority_queue<Segment> active;
  double total = 0.0;
  double total_err = 0.0;
  double total_abs = 0.0;
  // Sums over segments too narrow to split further.
  double frozen_value = 0.0;
  double frozen_err = 0.0;

  int used = 0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    Segment seg = evaluate_segment(f, breakpoints[i], breakpoints[i + 1]);
    total += seg.value;
    total_err += seg.err;
    total_abs += seg.resabs;
    active.push(seg);
    ++used;
  }

  auto target = [&]() {
    return std::max(rel_tol * std::abs(total), 50.0 * kEps * total_abs);
  };

  while (total_err > target() && !active.empty() && used < max_segments) {
    const Segment worst = active.top();
    active.pop();
    const double width = worst.b - worst.a;
    if (width <= std::max(1e-24, 8.0 * kEps * std::abs(worst.b))) {
      frozen_value += worst.value;
      frozen_err += worst.err;
      continue;  // cannot be refined further
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = evaluate_segment(f, worst.a, mid);
    Segment right = evaluate_segment(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    total_abs += left.resabs + right.resabs - worst.resabs;
    active.push(left);
    active.push(right);
    ++used;
  }

  if (total_err > target()) {
    throw NonConvergence(std::string(what) +
                         ": adaptive quadrature stalled at relative error " +
                         std::to_string(total_err / std::max(std::abs(total),
                                                             1e-300)));
  }
  (void)frozen_value;
  (void)frozen_err;
  return total;
}

void check_rel_tol(double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw InvalidInput("rel_tol must lie in (0, 1)");
  }
}

void check_law(const ChiSquareLaw& law) {
  if (law.dof < 1) throw InvalidInput("chi-square dof must be >= 1");
  if (!(law.noncentrality >= 0.0) || !std::isfinite(law.noncentrality)) {
    throw InvalidInput("noncentrality must be finite and >= 0");
  }
}

// Breakpoints in the transformed coordinate t = u/(u + dof), clustered
// around the bulk of the density (mean dof, sd sqrt(2 dof)) so narrow
// high-dof bumps are always seen by the initial pass.
std::vector<double> initial_breakpoints(int dof) {
  const double q = static_cast<double>(dof);
  const double sd = std::sqrt(2.0 * q);
  std::vector<double> anchors_u = {
      q / 8.0, q / 4.0, q / 2.0,  3.0 * q / 4.0, q,
      1.25 * q, 1.5 * q, 2.0 * q, 3.0 * q,       5.0 * q,
  };
  for (double k : {1.0, 2.0, 4.0}) {
    anchors_u.push_back(q + k * sd);
    if (q - k * sd > 0.0) anchors_u.push_back(q - k * sd);
  }

  std::vector<double> ts = {0.0, 1.0};
  for (double u : anchors_u) ts.push_back(u / (u + q));
  std::sort(ts.begin(), ts.end());
  std::vector<double> out;
  for (double t : ts) {
    if (out.empty() || t - out.back() > 1e-6) out.push_back(t);
  }
  if (out.back() != 1.0) out.push_back(1.0);
  return out;
}

}  // namespace

double central_expectation(const std::function<double(double)>& f, int dof,
                           double rel_tol) {
  if (dof < 1) throw InvalidInput("chi-square dof must be >= 1");
  check_rel_tol(rel_tol);

  const double q = static_cast<double>(dof);
  const double half_q = 0.5 * q;
  // log of the density normaliser 1 / (2^{q/2} Gamma(q/2)); the density is
  // evaluated in log space so dof ~ 1e4 stays finite.
  const double log_norm = -half_q * std::numbers::ln2 - std::lgamma(half_q);

  auto integrand = [&](double t) -> double {
    const double omt = 1.0 - t;
    const double u = q * t / omt;
    if (!(u > 0.0) || !std::isfinite(u)) return 0.0;
    const double log_weight = (half_q - 1.0) * std::log(u) - 0.5 * u +
                              log_norm + std::log(q) - 2.0 * std::log(omt);
    const double w = std::exp(log_weight);
    if (w == 0.0) return 0.0;
    return f(u) * w;
  };

  return adaptive_integrate(integrand, initial_breakpoints(dof), rel_tol,
                            4000, "central_expectation");
}

SeriesExpectation noncentral_expectation_diag(
    const std::function<double(double)>& f, const ChiSquareLaw& law,
    double rel_tol, double series_tail_mass) {
  check_law(law);
  check_rel_tol(rel_tol);
  if (!(series_tail_mass > 0.0 && series_tail_mass < 1.0)) {
    throw InvalidInput("series_tail_mass must lie in (0, 1)");
  }

  const double lambda = law.noncentrality;
  if (lambda == 0.0) {
    return {central_expectation(f, law.dof, rel_tol), 0.0, 1};
  }

  const double log_lambda = std::log(lambda);
  auto weight = [&](long long k) {
    return std::exp(-lambda + static_cast<double>(k) * log_lambda -
                    std::lgamma(static_cast<double>(k) + 1.0));
  };

  // Sum outward from the modal term so the big weights land first and the
  // truncated tail is the smallest-weight fringe.
  const long long k0 = static_cast<long long>(std::floor(lambda));
  double value = weight(k0) * central_expectation(f, law.dof + 2 * static_cast<int>(k0), rel_tol);
  double mass = weight(k0);
  int terms = 1;

  long long lo = k0 - 1;
  long long hi = k0 + 1;
  while (1.0 - mass >= series_tail_mass) {
    const double wlo = lo >= 0 ? weight(lo) : -1.0;
    const double whi = weight(hi);
    long long k;
    if (wlo >= whi) {
      k = lo--;
    } else {
      k = hi++;
    }
    const double w = weight(k);
    value += w * central_expectation(f, law.dof + 2 * static_cast<int>(k), rel_tol);
    mass += w;
    ++terms;
    if (terms > 200000) {
      throw NonConvergence("noncentral_expectation: Poisson series budget exhausted");
    }
  }

  return {value, std::max(0.0, 1.0 - mass), terms};
}

double noncentral_expectation(const std::function<double(double)>& f,
                              const ChiSquareLaw& law, double rel_tol,
                              double series_tail_mass) {
  return noncentral_expectation_diag(f, law, rel_tol, series_tail_mass).value;
}

namespace {

void check_shift(double shift, int dof, int power) {
  if (!(shift >= 0.0) || !std::isfinite(shift)) {
    throw InvalidInput("shift must be finite and >= 0");
  }
  if (shift == 0.0) {
    // The inverse moment exists only above a dof threshold.
    if (power == 1 && dof < 3) {
      throw InvalidInput("E[1/U] requires dof >= 3 when shift = 0");
    }
    if (power == 2 && dof < 5) {
      throw InvalidInput("E[1/U^2] requires dof >= 5 when shift = 0");
    }
  }
}

}  // namespace

double expect_inv_shift(int dof, double shift, double rel_tol) {
  if (dof < 1) throw InvalidInput("chi-square dof must be >= 1");
  check_shift(shift, dof, 1);
  return central_expectation(
      [shift](double u) { return 1.0 / (u + shift); }, dof, rel_tol);
}

double expect_inv_shift_sq(int dof, double shift, double rel_tol) {
  if (dof < 1) throw InvalidInput("chi-square dof must be >= 1");
  check_shift(shift, dof, 2);
  return central_expectation(
      [shift](double u) {
        const double d = u + shift;
        return 1.0 / (d * d);
      },
      dof, rel_tol);
}

SeriesExpectation evaluate(const ExpectationQuery& query) {
  check_law(query.law);
  if (query.power != 1 && query.power != 2) {
    throw InvalidInput("power must be 1 or 2");
  }
  check_shift(query.shift, query.law.dof, query.power);

  const double shift = query.shift;
  std::function<double(double)> f;
  if (query.power == 1) {
    f = [shift](double u) { return 1.0 / (u + shift); };
  } else {
    f = [shift](double u) {
      const double d = u + shift;
      return 1.0 / (d * d);
    };
  }
  return noncentral_expectation_diag(f, query.law, query.rel_tol,
                                     query.series_tail_mass);
}

double chi2_recurrence_check(const std::function<double(double)>& h, int dof,
                             double noncentrality, double rel_tol,
                             double series_tail_mass) {
  const ChiSquareLaw law{dof, noncentrality};
  check_law(law);
  const double lhs = noncentral_expectation(
      [&](double u) { return u * h(u); }, law, rel_tol, series_tail_mass);
  const double e2 = noncentral_expectation(
      h, ChiSquareLaw{dof + 2, noncentrality}, rel_tol, series_tail_mass);
  double e4 = 0.0;
  if (noncentrality > 0.0) {
    e4 = noncentral_expectation(h, ChiSquareLaw{dof + 4, noncentrality},
                                rel_tol, series_tail_mass);
  }
  return lhs - dof * e2 - 2.0 * noncentrality * e4;
}

}  // namespace shrinkrisk
