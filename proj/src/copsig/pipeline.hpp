// pipeline.hpp
// End-to-end composition used by the C API and the CLI: dataset in, hedged
// spread pair out, joint fit and per-timestamp signals on top.

#pragma once

#include "copsig/config.hpp"
#include "copsig/copula.hpp"
#include "copsig/ingest.hpp"
#include "copsig/pairs.hpp"
#include "copsig/signals.hpp"

#include <string>
#include <vector>

namespace copsig {

struct PairAnalysis {
    std::string base_symbol;
    std::string symbol_1;
    std::string symbol_2;
    double beta_1 = 0.0;
    double beta_2 = 0.0;
    // Both spreads restricted to their common timeline, so the fit sample
    // and the signal sample coincide.
    ingest::SpreadSeries spread_1;
    ingest::SpreadSeries spread_2;
    copula::JointFit fit;
};

// Builds spreads of the base against each leg (on returns or cumulative
// returns per config), aligns them, and fits marginals plus copula.
PairAnalysis analyze_pair(const ingest::Dataset& data, const RunConfig& config,
                          const std::string& symbol_1, const std::string& symbol_2);

std::vector<signals::Signal> pair_signals(const PairAnalysis& analysis, double epsilon);

// Correlation ranking of all non-base pairs with cointegration tests for the
// top-k entries.
std::vector<pairs::PairScore> scan_pairs(const ingest::Dataset& data, const RunConfig& config);

} // namespace copsig
