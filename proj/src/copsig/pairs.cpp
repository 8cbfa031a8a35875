#include "copsig/pairs.hpp"

#include "copsig/errors.hpp"
#include "copsig/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace copsig::pairs {

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size(), ErrorCode::LengthMismatch,
            "pearson_correlation: lengths differ (" + std::to_string(x.size()) + " vs " +
                std::to_string(y.size()) + ")");
    require(x.size() >= 3, ErrorCode::TooShort,
            "pearson_correlation: need at least 3 observations");

    const double n = static_cast<double>(x.size());
    const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;

    double cov = 0.0;
    double var_x = 0.0;
    double var_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    require(var_x > 0.0 && var_y > 0.0, ErrorCode::DegenerateSample,
            "pearson_correlation: zero variance sample");
    return std::clamp(cov / std::sqrt(var_x * var_y), -1.0, 1.0);
}

std::vector<double> divergence_metric(std::span<const double> r_i,
                                      std::span<const double> r_j,
                                      double beta, double r_f) {
    require(r_i.size() == r_j.size(), ErrorCode::LengthMismatch,
            "divergence_metric: lengths differ");
    std::vector<double> d;
    d.reserve(r_i.size());
    for (std::size_t t = 0; t < r_i.size(); ++t) {
        d.push_back(beta * (r_i[t] - r_f) - (r_j[t] - r_f));
    }
    return d;
}

EngleGrangerResult engle_granger(std::span<const double> x, std::span<const double> y,
                                 int lags) {
    require(lags >= 0, ErrorCode::InvalidArgument, "engle_granger: lags must be >= 0");
    require(x.size() == y.size(), ErrorCode::LengthMismatch,
            "engle_granger: lengths differ");
    const std::size_t n = x.size();
    require(n >= static_cast<std::size_t>(30 + lags), ErrorCode::TooShort,
            "engle_granger: need at least " + std::to_string(30 + lags) +
                " observations, got " + std::to_string(n));

    // Step 1: cointegrating regression y = a + b x, keep residuals.
    const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double cov = 0.0;
    double var_x = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (x[i] - mean_x) * (y[i] - mean_y);
        var_x += (x[i] - mean_x) * (x[i] - mean_x);
    }
    require(var_x > 0.0, ErrorCode::DegenerateRegressor,
            "engle_granger: regressor has zero variance");
    const double slope = cov / var_x;
    const double intercept = mean_y - slope * mean_x;

    std::vector<double> resid(n);
    for (std::size_t i = 0; i < n; ++i) resid[i] = y[i] - intercept - slope * x[i];

    std::vector<double> diff(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) diff[i] = resid[i + 1] - resid[i];

    // Step 2: ADF without deterministic terms,
    //   diff[t] = phi * resid[t] + sum_i gamma_i * diff[t - i] + err.
    const std::size_t k = 1 + static_cast<std::size_t>(lags);
    const std::size_t rows = diff.size() - static_cast<std::size_t>(lags);

    std::vector<std::vector<double>> xtx(k, std::vector<double>(k, 0.0));
    std::vector<double> xty(k, 0.0);
    auto regressor = [&](std::size_t row, std::size_t j) {
        const std::size_t t = row + static_cast<std::size_t>(lags); // index into diff
        return (j == 0) ? resid[t] : diff[t - j];
    };
    for (std::size_t row = 0; row < rows; ++row) {
        const double target = diff[row + static_cast<std::size_t>(lags)];
        for (std::size_t i = 0; i < k; ++i) {
            const double xi = regressor(row, i);
            xty[i] += xi * target;
            for (std::size_t j = i; j < k; ++j) xtx[i][j] += xi * regressor(row, j);
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < i; ++j) xtx[i][j] = xtx[j][i];
    }

    const num::LinearSolve solve = num::solve_with_inverse(xtx, xty);

    double rss = 0.0;
    for (std::size_t row = 0; row < rows; ++row) {
        double fitted = 0.0;
        for (std::size_t j = 0; j < k; ++j) fitted += solve.x[j] * regressor(row, j);
        const double e = diff[row + static_cast<std::size_t>(lags)] - fitted;
        rss += e * e;
    }
    require(rows > k, ErrorCode::TooShort, "engle_granger: too few rows for the ADF regression");
    const double sigma2 = rss / static_cast<double>(rows - k);
    const double se = std::sqrt(sigma2 * solve.inverse[0][0]);
    require(se > 0.0, ErrorCode::DegenerateRegressor,
            "engle_granger: zero standard error in the ADF regression");

    EngleGrangerResult result;
    result.eg_statistic = solve.x[0] / se;
    result.cointegrated = result.eg_statistic < kEngleGrangerCritical5Pct;
    return result;
}

std::vector<PairScore> rank_pairs(const std::map<std::string, ingest::ReturnSeries>& returns,
                                  const std::string& base_symbol,
                                  int eg_lags, std::size_t top_k) {
    std::vector<std::string> symbols;
    for (const auto& [symbol, series] : returns) {
        if (symbol != base_symbol) symbols.push_back(symbol);
    }
    require(symbols.size() >= 2, ErrorCode::MissingSymbol,
            "rank_pairs: need at least 2 non-base symbols, got " +
                std::to_string(symbols.size()));
    require(top_k >= 1, ErrorCode::InvalidArgument, "rank_pairs: top_k must be >= 1");

    std::vector<PairScore> scores;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        for (std::size_t j = i + 1; j < symbols.size(); ++j) {
            const ingest::AlignedPair aligned =
                ingest::align(returns.at(symbols[i]), returns.at(symbols[j]));
            PairScore score;
            score.symbol_a = symbols[i];
            score.symbol_b = symbols[j];
            score.correlation = pearson_correlation(aligned.base, aligned.asset);
            scores.push_back(std::move(score));
        }
    }

    std::sort(scores.begin(), scores.end(), [](const PairScore& a, const PairScore& b) {
        if (a.correlation != b.correlation) return a.correlation > b.correlation;
        if (a.symbol_a != b.symbol_a) return a.symbol_a < b.symbol_a;
        return a.symbol_b < b.symbol_b;
    });

    const std::size_t evaluate = std::min(top_k, scores.size());
    for (std::size_t idx = 0; idx < evaluate; ++idx) {
        PairScore& score = scores[idx];
        const ingest::AlignedPair aligned =
            ingest::align(returns.at(score.symbol_a), returns.at(score.symbol_b));
        // Cointegration runs on the integrated (cumulative-return) series.
        std::vector<double> cum_a(aligned.base.size());
        std::vector<double> cum_b(aligned.asset.size());
        double run_a = 0.0;
        double run_b = 0.0;
        for (std::size_t t = 0; t < aligned.base.size(); ++t) {
            run_a += aligned.base[t];
            run_b += aligned.asset[t];
            cum_a[t] = run_a;
            cum_b[t] = run_b;
        }
        // Exactly collinear series leave the ADF design singular (zero
        // residuals); the statistic is undefined for them, not an error for
        // the scan as a whole.
        try {
            const EngleGrangerResult eg = engle_granger(cum_a, cum_b, eg_lags);
            score.eg_statistic = eg.eg_statistic;
            score.cointegrated = eg.cointegrated;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateRegressor) throw;
        }
    }
    return scores;
}

} // namespace copsig::pairs
