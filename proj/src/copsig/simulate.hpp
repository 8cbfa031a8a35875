// simulate.hpp
// Synthetic data: a CSV generator whose spread pair follows a prescribed
// joint model, and the two-copula scatter demo with matched correlations.

#pragma once

#include "copsig/copula.hpp"
#include "copsig/margins.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace copsig::sim {

struct SimSpec {
    std::size_t n = 1000; // spread observations (prices get n + 1 rows)
    std::uint64_t seed = 42;
    copula::CopulaFamily copula_family = copula::CopulaFamily::Clayton;
    double theta = 5.0;
    margins::MarginalParams margin1 = margins::Gaussian{0.0, 0.01};
    margins::MarginalParams margin2 = margins::Gaussian{0.0, 0.01};
    double beta1 = 1.0;
    double beta2 = 1.0;
    std::string base_symbol = "BASE";
    std::string symbol1 = "A1";
    std::string symbol2 = "A2";
};

void validate_spec(const SimSpec& spec);

// Long-format price CSV (header timestamp,symbol,close) for three symbols.
// Base returns are constructed so that the pipeline's OLS hedge recovers
// beta1/beta2 exactly in-sample and the return-basis spreads reproduce the
// sampled joint model.
std::string simulate_csv(const SimSpec& spec);

struct PitfallDemo {
    double theta_clayton = 0.0;
    double theta_gumbel = 0.0;
    double corr_clayton = 0.0;
    double corr_gumbel = 0.0;
    std::vector<std::pair<double, double>> clayton_xy;
    std::vector<std::pair<double, double>> gumbel_xy;
};

// Two scatter sets with standard Gaussian margins and sample correlations
// matched by bisecting each family's theta on the Monte Carlo correlation of
// its own fixed draws. NumericFailure when the target cannot be bracketed.
PitfallDemo demo_pitfall(std::size_t n, double target_rho, std::uint64_t seed);

// CSV rendering, header `model,x,y`.
std::string demo_pitfall_csv(const PitfallDemo& demo);

} // namespace copsig::sim
