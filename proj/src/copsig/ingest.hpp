// ingest.hpp
// Price data loading and spread construction: long-format CSV in, aligned
// log-return and spread series out.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace copsig::ingest {

struct PricePoint {
    std::int64_t timestamp = 0; // epoch seconds
    double price = 0.0;
};

// Timestamps strictly increasing, prices positive, at least two rows.
struct PriceSeries {
    std::string symbol;
    std::vector<PricePoint> observations;
};

struct ValuePoint {
    std::int64_t timestamp = 0;
    double value = 0.0;
};

struct ReturnSeries {
    std::string symbol;
    std::vector<ValuePoint> observations;
};

// S_t = base_t - beta * asset_t over the common timestamps.
struct SpreadSeries {
    std::string base_symbol;
    std::string asset_symbol;
    double beta = 0.0;
    std::vector<ValuePoint> observations;
};

// All price series from a long-format CSV (header `timestamp,symbol,close`),
// ordered by symbol. Every symbol must have at least two rows.
struct Dataset {
    std::vector<PriceSeries> series;

    bool contains(const std::string& symbol) const;
    const PriceSeries& find(const std::string& symbol) const; // MissingSymbol
};

Dataset load_csv(const std::string& path);

// Single-symbol variant; rows for other symbols are ignored.
PriceSeries load_prices(const std::string& path, const std::string& symbol);

// Log returns: observation k carries ln(p_{k+1} / p_k) at the timestamp of
// p_{k+1}.
ReturnSeries compute_returns(const PriceSeries& prices);

// Running sum of returns (log price relative to the first observation).
ReturnSeries cumulative_returns(const ReturnSeries& returns);

// Inner join on timestamps; both outputs have equal length and share the
// returned timestamps.
struct AlignedPair {
    std::vector<std::int64_t> timestamps;
    std::vector<double> base;
    std::vector<double> asset;
};
AlignedPair align(const ReturnSeries& base, const ReturnSeries& asset);

// OLS slope of base on asset (intercept estimated and discarded) over the
// timestamp intersection. Errors: InsufficientOverlap, DegenerateRegressor.
double ols_beta(const ReturnSeries& base, const ReturnSeries& asset);

SpreadSeries build_spread(const ReturnSeries& base, const ReturnSeries& asset,
                          double beta);

} // namespace copsig::ingest
