// pairs.hpp
// Candidate-pair screening: Pearson correlation, the divergence metric, and
// an Engle-Granger two-step cointegration test.

#pragma once

#include "copsig/ingest.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace copsig::pairs {

// Large-sample 5% critical value for the Engle-Granger ADF statistic in the
// two-variable case. The test flags cointegration when the statistic falls
// below this value.
inline constexpr double kEngleGrangerCritical5Pct = -3.34;

struct PairScore {
    std::string symbol_a;
    std::string symbol_b;
    double correlation = 0.0;
    std::optional<double> eg_statistic; // only evaluated for top-K candidates
    bool cointegrated = false;
};

// Sample Pearson correlation. Errors: LengthMismatch, TooShort (< 3),
// DegenerateSample (zero variance on either side).
double pearson_correlation(std::span<const double> x, std::span<const double> y);

// D_t = beta * (r_i,t - r_f) - (r_j,t - r_f), elementwise.
std::vector<double> divergence_metric(std::span<const double> r_i,
                                      std::span<const double> r_j,
                                      double beta, double r_f);

struct EngleGrangerResult {
    double eg_statistic = 0.0; // ADF t-statistic on the cointegration residuals
    bool cointegrated = false;
};

// Two-step Engle-Granger: OLS of y on x with intercept, then an ADF
// regression of the residual differences on the lagged residual level and
// `lags` lagged differences (no deterministic terms). Requires equal lengths
// >= 30 + lags.
EngleGrangerResult engle_granger(std::span<const double> x, std::span<const double> y,
                                 int lags);

// Scores every unordered pair of non-base symbols: correlation on aligned
// returns, descending order; cointegration (on aligned cumulative returns)
// evaluated for the top_k entries only.
std::vector<PairScore> rank_pairs(const std::map<std::string, ingest::ReturnSeries>& returns,
                                  const std::string& base_symbol,
                                  int eg_lags, std::size_t top_k);

} // namespace copsig::pairs
