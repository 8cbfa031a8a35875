#include "copsig/ingest.hpp"

#include "copsig/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace copsig::ingest {

namespace {

std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(strip(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::int64_t parse_timestamp(const std::string& text, std::size_t row) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    require(ec == std::errc() && ptr == text.data() + text.size(), ErrorCode::MalformedRow,
            "row " + std::to_string(row) + ": bad timestamp '" + text + "'");
    return value;
}

double parse_price(const std::string& text, std::size_t row) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    require(errno == 0 && end == text.c_str() + text.size() && !text.empty() &&
                std::isfinite(value),
            ErrorCode::MalformedRow, "row " + std::to_string(row) + ": bad price '" + text + "'");
    return value;
}

} // namespace

bool Dataset::contains(const std::string& symbol) const {
    return std::any_of(series.begin(), series.end(),
                       [&](const PriceSeries& s) { return s.symbol == symbol; });
}

const PriceSeries& Dataset::find(const std::string& symbol) const {
    for (const PriceSeries& s : series) {
        if (s.symbol == symbol) return s;
    }
    raise(ErrorCode::MissingSymbol, "no rows for symbol '" + symbol + "'");
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::Io, "cannot open '" + path + "'");

    std::string line;
    require(static_cast<bool>(std::getline(in, line)), ErrorCode::MalformedRow,
            "'" + path + "': empty file, expected header");
    require(strip(line) == "timestamp,symbol,close", ErrorCode::MalformedRow,
            "'" + path + "': expected header 'timestamp,symbol,close', got '" + strip(line) + "'");

    std::map<std::string, std::vector<PricePoint>> by_symbol;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (strip(line).empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        require(fields.size() == 3, ErrorCode::MalformedRow,
                "row " + std::to_string(row) + ": expected 3 fields, got " +
                    std::to_string(fields.size()));
        const std::int64_t ts = parse_timestamp(fields[0], row);
        require(!fields[1].empty(), ErrorCode::MalformedRow,
                "row " + std::to_string(row) + ": empty symbol");
        const double price = parse_price(fields[2], row);
        require(price > 0.0, ErrorCode::NonPositivePrice,
                "row " + std::to_string(row) + ": non-positive price " + fields[2] +
                    " for symbol '" + fields[1] + "'");
        by_symbol[fields[1]].push_back({ts, price});
    }

    Dataset dataset;
    for (auto& [symbol, points] : by_symbol) {
        std::sort(points.begin(), points.end(),
                  [](const PricePoint& a, const PricePoint& b) { return a.timestamp < b.timestamp; });
        for (std::size_t i = 1; i < points.size(); ++i) {
            require(points[i].timestamp != points[i - 1].timestamp, ErrorCode::DuplicateTimestamp,
                    "symbol '" + symbol + "': duplicate timestamp " +
                        std::to_string(points[i].timestamp));
        }
        require(points.size() >= 2, ErrorCode::TooShort,
                "symbol '" + symbol + "': need at least 2 rows, got " +
                    std::to_string(points.size()));
        dataset.series.push_back({symbol, std::move(points)});
    }
    return dataset;
}

PriceSeries load_prices(const std::string& path, const std::string& symbol) {
    const Dataset dataset = load_csv(path);
    return dataset.find(symbol);
}

ReturnSeries compute_returns(const PriceSeries& prices) {
    require(prices.observations.size() >= 2, ErrorCode::TooShort,
            "compute_returns: need at least 2 prices for '" + prices.symbol + "'");
    ReturnSeries returns;
    returns.symbol = prices.symbol;
    returns.observations.reserve(prices.observations.size() - 1);
    for (std::size_t i = 1; i < prices.observations.size(); ++i) {
        const double r = std::log(prices.observations[i].price / prices.observations[i - 1].price);
        returns.observations.push_back({prices.observations[i].timestamp, r});
    }
    return returns;
}

ReturnSeries cumulative_returns(const ReturnSeries& returns) {
    ReturnSeries out;
    out.symbol = returns.symbol;
    out.observations.reserve(returns.observations.size());
    double running = 0.0;
    for (const ValuePoint& p : returns.observations) {
        running += p.value;
        out.observations.push_back({p.timestamp, running});
    }
    return out;
}

AlignedPair align(const ReturnSeries& base, const ReturnSeries& asset) {
    AlignedPair out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < base.observations.size() && j < asset.observations.size()) {
        const std::int64_t tb = base.observations[i].timestamp;
        const std::int64_t ta = asset.observations[j].timestamp;
        if (tb == ta) {
            out.timestamps.push_back(tb);
            out.base.push_back(base.observations[i].value);
            out.asset.push_back(asset.observations[j].value);
            ++i;
            ++j;
        } else if (tb < ta) {
            ++i;
        } else {
            ++j;
        }
    }
    return out;
}

double ols_beta(const ReturnSeries& base, const ReturnSeries& asset) {
    const AlignedPair aligned = align(base, asset);
    const std::size_t n = aligned.timestamps.size();
    require(n >= 2, ErrorCode::InsufficientOverlap,
            "ols_beta: need at least 2 common timestamps, got " + std::to_string(n));

    double mean_base = 0.0;
    double mean_asset = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mean_base += aligned.base[k];
        mean_asset += aligned.asset[k];
    }
    mean_base /= static_cast<double>(n);
    mean_asset /= static_cast<double>(n);

    double cov = 0.0;
    double var = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double db = aligned.base[k] - mean_base;
        const double da = aligned.asset[k] - mean_asset;
        cov += db * da;
        var += da * da;
    }
    require(var > 0.0, ErrorCode::DegenerateRegressor,
            "ols_beta: asset returns have zero variance on the overlap");
    return cov / var;
}

SpreadSeries build_spread(const ReturnSeries& base, const ReturnSeries& asset,
                          double beta) {
    const AlignedPair aligned = align(base, asset);
    require(!aligned.timestamps.empty(), ErrorCode::InsufficientOverlap,
            "build_spread: no common timestamps between '" + base.symbol + "' and '" +
                asset.symbol + "'");

    SpreadSeries spread;
    spread.base_symbol = base.symbol;
    spread.asset_symbol = asset.symbol;
    spread.beta = beta;
    spread.observations.reserve(aligned.timestamps.size());
    for (std::size_t k = 0; k < aligned.timestamps.size(); ++k) {
        spread.observations.push_back(
            {aligned.timestamps[k], aligned.base[k] - beta * aligned.asset[k]});
    }
    return spread;
}

} // namespace copsig::ingest
