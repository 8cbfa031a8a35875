// optimize.hpp
// Derivative-free optimizers shared by the fitting code: Nelder-Mead for
// 2-7 parameter likelihoods, golden-section for one-dimensional copula
// parameters, plus bracketed root finding used by samplers and quantiles.

#pragma once

#include <functional>
#include <vector>

namespace copsig::num {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;     // objective at x (minimized)
    int iterations = 0;
    bool converged = false; // simplex diameter fell below tolerance
};

struct NelderMeadOptions {
    int max_iterations = 2000;
    double diameter_tolerance = 1e-10;
    double initial_step = 0.05; // relative; absolute floor 2.5e-4
};

// Minimizes f starting from x0 with a standard reflect/expand/contract/shrink
// simplex. The returned point is the best vertex seen, converged or not.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0,
                             const NelderMeadOptions& options = {});

// Maximizes g on [lo, hi] by golden-section search to the given tolerance on
// the argument, then attempts one Newton polish step from finite differences.
double golden_section_maximize(const std::function<double(double)>& g,
                               double lo, double hi, double tolerance = 1e-10);

// Finds x in [lo, hi] with f(x) = target by bisection; f must be monotone
// nondecreasing. Stops when the bracket is narrower than tolerance.
double bisect_increasing(const std::function<double(double)>& f,
                         double target, double lo, double hi,
                         double tolerance = 1e-12);

// Inverts a scalar CDF: returns x with cdf(x) = p. Newton steps using the
// density, safeguarded by a bisection bracket that is grown geometrically
// from the initial guess.
double invert_cdf(const std::function<double(double)>& cdf,
                  const std::function<double(double)>& pdf,
                  double p, double initial_guess, double scale_hint);

} // namespace copsig::num
