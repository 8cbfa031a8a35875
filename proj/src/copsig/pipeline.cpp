#include "copsig/pipeline.hpp"

#include "copsig/errors.hpp"

#include <map>

namespace copsig {

namespace {

// Restricts both spread series to their shared timestamps.
void align_spreads(ingest::SpreadSeries& a, ingest::SpreadSeries& b) {
    std::vector<ingest::ValuePoint> out_a;
    std::vector<ingest::ValuePoint> out_b;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.observations.size() && j < b.observations.size()) {
        const auto& pa = a.observations[i];
        const auto& pb = b.observations[j];
        if (pa.timestamp == pb.timestamp) {
            out_a.push_back(pa);
            out_b.push_back(pb);
            ++i;
            ++j;
        } else if (pa.timestamp < pb.timestamp) {
            ++i;
        } else {
            ++j;
        }
    }
    a.observations = std::move(out_a);
    b.observations = std::move(out_b);
}

ingest::ReturnSeries series_for_basis(const ingest::PriceSeries& prices, SpreadBasis basis) {
    ingest::ReturnSeries returns = ingest::compute_returns(prices);
    if (basis == SpreadBasis::Cumulative) return ingest::cumulative_returns(returns);
    return returns;
}

} // namespace

PairAnalysis analyze_pair(const ingest::Dataset& data, const RunConfig& config,
                          const std::string& symbol_1, const std::string& symbol_2) {
    validate_config(config);
    require(symbol_1 != symbol_2, ErrorCode::InvalidArgument,
            "analyze_pair: the two legs must be distinct symbols");
    require(!config.base_symbol.empty(), ErrorCode::InvalidArgument,
            "analyze_pair: base symbol not set");

    const ingest::ReturnSeries base = series_for_basis(data.find(config.base_symbol),
                                                       config.spread_on);
    const ingest::ReturnSeries leg1 = series_for_basis(data.find(symbol_1), config.spread_on);
    const ingest::ReturnSeries leg2 = series_for_basis(data.find(symbol_2), config.spread_on);

    PairAnalysis analysis;
    analysis.base_symbol = config.base_symbol;
    analysis.symbol_1 = symbol_1;
    analysis.symbol_2 = symbol_2;
    analysis.beta_1 = ingest::ols_beta(base, leg1);
    analysis.beta_2 = ingest::ols_beta(base, leg2);
    analysis.spread_1 = ingest::build_spread(base, leg1, analysis.beta_1);
    analysis.spread_2 = ingest::build_spread(base, leg2, analysis.beta_2);
    align_spreads(analysis.spread_1, analysis.spread_2);
    require(!analysis.spread_1.observations.empty(), ErrorCode::InsufficientOverlap,
            "analyze_pair: the two spread series share no timestamps");

    std::vector<double> x;
    std::vector<double> y;
    x.reserve(analysis.spread_1.observations.size());
    y.reserve(analysis.spread_2.observations.size());
    for (const auto& p : analysis.spread_1.observations) x.push_back(p.value);
    for (const auto& p : analysis.spread_2.observations) y.push_back(p.value);

    analysis.fit = copula::fit_joint(x, y, config.marginal_families, config.copula_families,
                                     {config.fit_method, config.pit});
    return analysis;
}

std::vector<signals::Signal> pair_signals(const PairAnalysis& analysis, double epsilon) {
    return signals::signal_series(analysis.spread_1, analysis.spread_2, analysis.fit, epsilon);
}

std::vector<pairs::PairScore> scan_pairs(const ingest::Dataset& data, const RunConfig& config) {
    validate_config(config);
    std::map<std::string, ingest::ReturnSeries> returns;
    for (const ingest::PriceSeries& prices : data.series) {
        returns[prices.symbol] = ingest::compute_returns(prices);
    }
    return pairs::rank_pairs(returns, config.base_symbol, config.eg_lags,
                             static_cast<std::size_t>(config.top_k));
}

} // namespace copsig
