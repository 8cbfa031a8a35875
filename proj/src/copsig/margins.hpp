// margins.hpp
// Parametric univariate families for spread marginals: Gaussian, Student-t
// and Cauchy. Density, CDF, quantile, maximum-likelihood fitting and AIC
// model selection.

#pragma once

#include "copsig/rng.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace copsig::margins {

enum class MarginalFamily { Gaussian = 0, StudentT = 1, Cauchy = 2 };

const char* family_name(MarginalFamily family);
MarginalFamily family_from_name(const std::string& name);

// Number of free parameters (the k in AIC).
int parameter_count(MarginalFamily family);

struct Gaussian {
    double mu = 0.0;
    double sigma = 1.0;
};

struct StudentT {
    double nu = 1.0; // degrees of freedom, continuous
    double loc = 0.0;
    double scale = 1.0;
};

struct Cauchy {
    double x0 = 0.0;
    double gamma = 1.0;
};

using MarginalParams = std::variant<Gaussian, StudentT, Cauchy>;

MarginalFamily family_of(const MarginalParams& params);

// Throws InvalidArgument unless every scale-like parameter is finite and
// strictly positive.
void validate(const MarginalParams& params);

struct MarginalModel {
    MarginalParams params;
    double loglik = 0.0;
    double aic = 0.0;
    std::size_t n = 0;

    MarginalFamily family() const { return family_of(params); }
};

double pdf(const MarginalParams& params, double x);
double log_pdf(const MarginalParams& params, double x);
double cdf(const MarginalParams& params, double x);

// Inverse CDF; requires 0 < p < 1 (OutOfRange otherwise).
double quantile(const MarginalParams& params, double p);

// Location parameter of the family (mu / loc / x0).
double location(const MarginalParams& params);

double loglik(const MarginalParams& params, std::span<const double> xs);

// Akaike information criterion, 2k - 2 loglik.
double aic(double loglik_value, int k);

// Maximum-likelihood fit. Gaussian uses the closed form (mean and biased
// standard deviation); Student-t and Cauchy run Nelder-Mead on unconstrained
// transforms with moment/quantile starting points.
// Errors: TooFewSamples (< 8), DegenerateSample (all equal), NonConvergence.
MarginalModel fit_mle(std::span<const double> samples, MarginalFamily family);

// Fits every family and returns the minimum-AIC model. Ties break toward
// fewer parameters, then enumeration order Gaussian < StudentT < Cauchy.
MarginalModel select_marginal(std::span<const double> samples,
                              std::span<const MarginalFamily> families);

// Inverse-transform sampler, deterministic given the Rng state.
std::vector<double> sample(const MarginalParams& params, std::size_t n, Rng& rng);

} // namespace copsig::margins
