// config.hpp
// Run configuration shared by the C API and the CLI: data location, family
// lists, decision threshold and every other open pipeline parameter. Parses
// a flat key = value text format and serializes back to a normalized form.

#pragma once

#include "copsig/copula.hpp"
#include "copsig/margins.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace copsig {

enum class SpreadBasis { Returns = 0, Cumulative = 1 };

const char* spread_basis_name(SpreadBasis basis);

struct RunConfig {
    std::string data_path;
    std::string base_symbol;
    double epsilon = 0.05;
    std::vector<margins::MarginalFamily> marginal_families{
        margins::MarginalFamily::Gaussian, margins::MarginalFamily::StudentT,
        margins::MarginalFamily::Cauchy};
    std::vector<copula::CopulaFamily> copula_families{
        copula::CopulaFamily::Independent, copula::CopulaFamily::Clayton,
        copula::CopulaFamily::Gumbel, copula::CopulaFamily::EFGM};
    copula::FitMethod fit_method = copula::FitMethod::IFM;
    SpreadBasis spread_on = SpreadBasis::Returns;
    copula::PitMode pit = copula::PitMode::Parametric;
    int eg_lags = 1;
    int top_k = 10;
    std::uint64_t seed = 42;

    bool operator==(const RunConfig&) const = default;
};

// Throws InvalidArgument / EpsilonOutOfRange when a field is out of range or
// a family list is empty.
void validate_config(const RunConfig& config);

// Parses `key = value` lines ('#' starts a comment) on top of defaults.
// Unknown keys are rejected.
RunConfig parse_config_text(const std::string& text);

RunConfig load_config(const std::string& path);

// Normalized text form; parse_config_text is its exact inverse.
std::string serialize_config(const RunConfig& config);

} // namespace copsig
