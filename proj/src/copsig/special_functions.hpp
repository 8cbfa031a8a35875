// special_functions.hpp
// Scalar special functions backing the distribution code: standard normal
// CDF/quantile and the regularized incomplete beta function.

#pragma once

namespace copsig::num {

// Standard normal CDF, accurate to ~1e-16 via erfc.
double normal_cdf(double z);

// Standard normal density.
double normal_pdf(double z);

// Inverse standard normal CDF (Wichura's AS 241, double precision branch).
// Requires 0 < p < 1.
double normal_quantile(double p);

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
// Continued-fraction evaluation (modified Lentz), absolute accuracy ~1e-14.
double incomplete_beta(double a, double b, double x);

} // namespace copsig::num
