#pragma once

#include <functional>

#include "shrinkrisk/errors.hpp"

namespace shrinkrisk {

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr double kDefaultSeriesTailMass = 1e-12;

// Possibly noncentral chi-square law. The noncentral law with parameter
// lambda is the Poisson(lambda) mixture of central chi^2_{dof+2k} laws, so
// E[U] = dof + 2*lambda. (For X ~ N_p(theta, sigma^2 I), ||X||^2/sigma^2
// follows this law with dof = p and lambda = ||theta||^2 / (2 sigma^2).)
struct ChiSquareLaw {
  int dof = 1;                // q >= 1
  double noncentrality = 0.0; // lambda >= 0
};

// E[1/(U + shift)^power] under `law`, evaluated to relative accuracy rel_tol,
// truncating the Poisson mixture once the omitted mass drops below
// series_tail_mass.
struct ExpectationQuery {
  ChiSquareLaw law;
  double shift = 0.0;
  int power = 1;  // 1 or 2
  double rel_tol = kDefaultRelTol;
  double series_tail_mass = kDefaultSeriesTailMass;
};

// Value plus diagnostics of the Poisson-mixture truncation.
struct SeriesExpectation {
  double value = 0.0;
  double tail_mass = 0.0;  // mixture mass omitted by truncation
  int terms = 1;           // central expectations evaluated
};

// E[f(U)] for U ~ central chi^2_dof, by adaptive Gauss-Kronrod quadrature on
// (0, inf) after the tail-compactifying substitution u = dof * t / (1 - t).
// Throws NonConvergence if rel_tol cannot be met within the segment budget.
double central_expectation(const std::function<double(double)>& f, int dof,
                           double rel_tol = kDefaultRelTol);

// E[f(U)] for U ~ chi^2_dof(lambda): Poisson(lambda)-weighted sum of central
// expectations at dof + 2k, summed outward from the modal k.
double noncentral_expectation(const std::function<double(double)>& f,
                              const ChiSquareLaw& law,
                              double rel_tol = kDefaultRelTol,
                              double series_tail_mass = kDefaultSeriesTailMass);

// Same, returning truncation diagnostics.
SeriesExpectation noncentral_expectation_diag(
    const std::function<double(double)>& f, const ChiSquareLaw& law,
    double rel_tol = kDefaultRelTol,
    double series_tail_mass = kDefaultSeriesTailMass);

// E[1/(U + shift)] for U ~ central chi^2_dof. shift = 0 requires dof >= 3
// (otherwise the inverse moment does not exist). At shift = 0 the value is
// 1/(dof - 2).
double expect_inv_shift(int dof, double shift,
                        double rel_tol = kDefaultRelTol);

// E[1/(U + shift)^2] for U ~ central chi^2_dof. shift = 0 requires dof >= 5;
// there the value is 1/((dof - 2)(dof - 4)).
double expect_inv_shift_sq(int dof, double shift,
                           double rel_tol = kDefaultRelTol);

// Full query evaluation (noncentral laws allowed) with diagnostics.
SeriesExpectation evaluate(const ExpectationQuery& query);

// Residual of the dof-recurrence identity
//   E[U h(U)] = q E_{q+2}[h] + 2 lambda E_{q+4}[h]
// where the subscripted expectations keep the same noncentrality. Returns the
// raw (absolute) residual; callers normalise by the term magnitudes.
double chi2_recurrence_check(const std::function<double(double)>& h, int dof,
                             double noncentrality,
                             double rel_tol = kDefaultRelTol,
                             double series_tail_mass = kDefaultSeriesTailMass);

}  // namespace shrinkrisk
