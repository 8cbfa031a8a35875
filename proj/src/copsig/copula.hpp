// copula.hpp
// Bivariate copula families (Independent, Clayton, Gumbel, EFGM): CDF,
// density, conditional h-functions, conditional-inversion sampling, and
// parameter estimation by IFM or full maximum likelihood.

#pragma once

#include "copsig/margins.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace copsig::copula {

enum class CopulaFamily { Independent = 0, Clayton = 1, Gumbel = 2, EFGM = 3 };

const char* family_name(CopulaFamily family);
CopulaFamily family_from_name(const std::string& name);

// Free parameters: 0 for Independent, 1 otherwise.
int parameter_count(CopulaFamily family);

// Throws ThetaOutOfDomain unless theta lies in the family's domain
// (Clayton > 0, Gumbel >= 1, EFGM in [-1, 1]; ignored for Independent).
void check_theta(CopulaFamily family, double theta);

// C(u, v). Requires u, v in [0, 1]. Boundary arguments are resolved exactly
// (uniform margins and groundedness) before any family formula runs.
double copula_cdf(CopulaFamily family, double theta, double u, double v);

// c(u, v) = d2C/dudv. Requires u, v strictly inside (0, 1); exact 0 or 1
// raises BoundaryInput.
double copula_density(CopulaFamily family, double theta, double u, double v);

// h(u | v) = P[U <= u | V = v] = dC/dv. Requires v in (0, 1) (BoundaryInput
// otherwise); u may sit on the boundary and maps to 0 or 1 exactly.
double h_u_given_v(CopulaFamily family, double theta, double u, double v);

// h(v | u) = P[V <= v | U = u] = dC/du. All four families are exchangeable,
// so this is h_u_given_v with the arguments swapped.
double h_v_given_u(CopulaFamily family, double theta, double u, double v);

// Solves h_v_given_u(u, v) = w for v. Closed form for Independent and
// Clayton; bisection to 1e-12 for Gumbel and EFGM.
double h_v_given_u_inverse(CopulaFamily family, double theta, double u, double w);

// Conditional-inversion sampler: n (u, v) pairs, deterministic given seed.
std::vector<std::pair<double, double>> sample_copula(CopulaFamily family, double theta,
                                                     std::size_t n, std::uint64_t seed);

struct CopulaModel {
    CopulaFamily family = CopulaFamily::Independent;
    double theta = 0.0; // ignored for Independent
    double loglik = 0.0;
    std::size_t n = 0;
};

// AIC of a fitted copula, 2k - 2 loglik with k = parameter_count.
double copula_aic(const CopulaModel& model);

// Maximizes sum of log c(u_i, v_i; theta) over the family domain by
// golden-section search on a transformed parameter (log for Clayton and
// Gumbel, identity with hard clipping for EFGM). Inputs must lie strictly
// inside (0, 1); they are clamped to [1e-10, 1 - 1e-10] during evaluation.
CopulaModel fit_copula_ifm(std::span<const std::pair<double, double>> uv,
                           CopulaFamily family);

enum class FitMethod { IFM = 0, FullMLE = 1 };
enum class PitMode { Parametric = 0, Empirical = 1 };

const char* fit_method_name(FitMethod method);
const char* pit_mode_name(PitMode mode);

struct FitOptions {
    FitMethod method = FitMethod::IFM;
    PitMode pit = PitMode::Parametric;
};

struct JointFit {
    margins::MarginalModel marginal1;
    margins::MarginalModel marginal2;
    CopulaModel copula;
    FitMethod method = FitMethod::IFM;
    PitMode pit = PitMode::Parametric;
    double total_loglik = 0.0;
};

// Probability integral transform of raw observations through a fitted
// marginal CDF, clamped to [1e-10, 1 - 1e-10].
std::vector<double> parametric_pit(const margins::MarginalParams& params,
                                   std::span<const double> xs);

// Rank-based pseudo-observations, midrank / (n + 1). Invariant under any
// strictly increasing transform of the data.
std::vector<double> empirical_pit(std::span<const double> xs);

// Full two-leg fit: marginal selection by AIC, PIT, copula family selection
// by AIC; FullMLE additionally refines all parameters jointly from the IFM
// solution and never ends below it in likelihood.
JointFit fit_joint(std::span<const double> x, std::span<const double> y,
                   std::span<const margins::MarginalFamily> marginal_families,
                   std::span<const CopulaFamily> copula_families,
                   const FitOptions& options = {});

} // namespace copsig::copula
