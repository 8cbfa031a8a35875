#include "copsig/simulate.hpp"

#include "copsig/errors.hpp"
#include "copsig/linear.hpp"
#include "copsig/optimize.hpp"
#include "copsig/pairs.hpp"
#include "copsig/rng.hpp"
#include "copsig/special_functions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <span>
#include <sstream>

namespace copsig::sim {

namespace {

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

double sample_sd(std::span<const double> xs) {
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size()));
}

double centered_dot(std::span<const double> a, std::span<const double> b) {
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - ma) * (b[i] - mb);
    return acc;
}

// Residual of g after projecting onto span{1, s1, s2} (in-sample), making
// the result exactly uncorrelated with both spreads.
std::vector<double> orthogonalize(const std::vector<double>& g,
                                  const std::vector<double>& s1,
                                  const std::vector<double>& s2) {
    const std::size_t n = g.size();
    std::vector<std::vector<double>> xtx(3, std::vector<double>(3, 0.0));
    std::vector<double> xty(3, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double row[3] = {1.0, s1[i], s2[i]};
        for (int a = 0; a < 3; ++a) {
            xty[a] += row[a] * g[i];
            for (int b = a; b < 3; ++b) xtx[a][b] += row[a] * row[b];
        }
    }
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < a; ++b) xtx[a][b] = xtx[b][a];
    }

    const num::LinearSolve solve = num::solve_with_inverse(xtx, xty);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = g[i] - (solve.x[0] + solve.x[1] * s1[i] + solve.x[2] * s2[i]);
    }
    return out;
}

std::vector<double> prices_from_returns(const std::vector<double>& returns) {
    std::vector<double> prices;
    prices.reserve(returns.size() + 1);
    prices.push_back(100.0);
    for (double r : returns) prices.push_back(prices.back() * std::exp(r));
    return prices;
}

// Sample Pearson correlation of the Gaussianized copula sample for a given
// theta, holding the underlying uniform draws fixed.
double gaussianized_corr(copula::CopulaFamily family, double theta,
                         const std::vector<std::pair<double, double>>& uw) {
    std::vector<double> x;
    std::vector<double> y;
    x.reserve(uw.size());
    y.reserve(uw.size());
    for (const auto& [u, w] : uw) {
        x.push_back(num::normal_quantile(u));
        y.push_back(num::normal_quantile(copula::h_v_given_u_inverse(family, theta, u, w)));
    }
    return pairs::pearson_correlation(x, y);
}

std::vector<std::pair<double, double>> draw_uniform_pairs(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<double, double>> uw;
    uw.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        const double w = rng.uniform01();
        uw.emplace_back(u, w);
    }
    return uw;
}

std::vector<std::pair<double, double>> gaussianized_sample(
    copula::CopulaFamily family, double theta,
    const std::vector<std::pair<double, double>>& uw) {
    std::vector<std::pair<double, double>> xy;
    xy.reserve(uw.size());
    for (const auto& [u, w] : uw) {
        xy.emplace_back(num::normal_quantile(u),
                        num::normal_quantile(copula::h_v_given_u_inverse(family, theta, u, w)));
    }
    return xy;
}

} // namespace

void validate_spec(const SimSpec& spec) {
    require(spec.n >= 8, ErrorCode::InvalidArgument,
            "simulate: n must be >= 8, got " + std::to_string(spec.n));
    copula::check_theta(spec.copula_family, spec.theta);
    margins::validate(spec.margin1);
    margins::validate(spec.margin2);
    require(spec.beta1 != 0.0 && spec.beta2 != 0.0, ErrorCode::InvalidArgument,
            "simulate: hedge betas must be nonzero");
    require(!spec.base_symbol.empty() && !spec.symbol1.empty() && !spec.symbol2.empty() &&
                spec.base_symbol != spec.symbol1 && spec.base_symbol != spec.symbol2 &&
                spec.symbol1 != spec.symbol2,
            ErrorCode::InvalidArgument, "simulate: symbols must be distinct and nonempty");
}

std::string simulate_csv(const SimSpec& spec) {
    validate_spec(spec);

    const auto uv = copula::sample_copula(spec.copula_family, spec.theta, spec.n, spec.seed);
    std::vector<double> s1;
    std::vector<double> s2;
    s1.reserve(spec.n);
    s2.reserve(spec.n);
    for (const auto& [u, v] : uv) {
        s1.push_back(margins::quantile(spec.margin1, u));
        s2.push_back(margins::quantile(spec.margin2, v));
    }

    // Noise stream for the base returns, decoupled from the copula stream.
    Rng noise_rng(spec.seed ^ 0xD1B54A32D192ED03ULL);
    const double sigma_g = 5.0 * std::max({sample_sd(s1), sample_sd(s2), 1e-8});
    std::vector<double> g(spec.n);
    for (double& gi : g) gi = sigma_g * noise_rng.normal();
    const std::vector<double> resid = orthogonalize(g, s1, s2);

    // Choose base = resid + l1*s1 + l2*s2 with sample moments satisfying
    // Cov(base, s_i) = Var(s_i); then the pipeline's OLS slope of base on
    // (base - s_i)/beta_i equals beta_i exactly and the recovered spread is
    // s_i itself.
    const double v1 = centered_dot(s1, s1);
    const double v2 = centered_dot(s2, s2);
    const double c12 = centered_dot(s1, s2);
    const num::LinearSolve lambda = num::solve_with_inverse({{v1, c12}, {c12, v2}}, {v1, v2});

    std::vector<double> base(spec.n);
    std::vector<double> leg1(spec.n);
    std::vector<double> leg2(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        base[i] = resid[i] + lambda.x[0] * s1[i] + lambda.x[1] * s2[i];
        leg1[i] = (base[i] - s1[i]) / spec.beta1;
        leg2[i] = (base[i] - s2[i]) / spec.beta2;
    }

    const std::vector<double> p_base = prices_from_returns(base);
    const std::vector<double> p1 = prices_from_returns(leg1);
    const std::vector<double> p2 = prices_from_returns(leg2);
    for (const auto* prices : {&p_base, &p1, &p2}) {
        for (double p : *prices) {
            require(std::isfinite(p) && p > 0.0, ErrorCode::NumericFailure,
                    "simulate: price path left the positive range; use smaller marginal scales");
        }
    }

    std::ostringstream out;
    out << "timestamp,symbol,close\n";
    for (std::size_t k = 0; k < spec.n + 1; ++k) {
        const std::int64_t ts = 86400 * static_cast<std::int64_t>(k + 1);
        out << ts << "," << spec.base_symbol << "," << format_double(p_base[k]) << "\n";
        out << ts << "," << spec.symbol1 << "," << format_double(p1[k]) << "\n";
        out << ts << "," << spec.symbol2 << "," << format_double(p2[k]) << "\n";
    }
    return out.str();
}

PitfallDemo demo_pitfall(std::size_t n, double target_rho, std::uint64_t seed) {
    require(n >= 16, ErrorCode::InvalidArgument, "demo_pitfall: n must be >= 16");
    require(target_rho > 0.0 && target_rho < 0.95, ErrorCode::InvalidArgument,
            "demo_pitfall: target correlation must lie in (0, 0.95)");

    const auto uw_clayton = draw_uniform_pairs(n, seed);
    const auto uw_gumbel = draw_uniform_pairs(n, seed + 1);

    constexpr double kClaytonLo = 0.05;
    constexpr double kClaytonHi = 30.0;
    constexpr double kGumbelLo = 1.0 + 1e-9;
    constexpr double kGumbelHi = 30.0;

    const auto corr_clayton_at = [&](double theta) {
        return gaussianized_corr(copula::CopulaFamily::Clayton, theta, uw_clayton);
    };
    const auto corr_gumbel_at = [&](double theta) {
        return gaussianized_corr(copula::CopulaFamily::Gumbel, theta, uw_gumbel);
    };

    require(corr_clayton_at(kClaytonLo) < target_rho && corr_clayton_at(kClaytonHi) > target_rho,
            ErrorCode::NumericFailure,
            "demo_pitfall: target correlation not bracketed by the Clayton theta range");

    PitfallDemo demo;
    demo.theta_clayton =
        num::bisect_increasing(corr_clayton_at, target_rho, kClaytonLo, kClaytonHi, 1e-9);
    demo.corr_clayton = corr_clayton_at(demo.theta_clayton);

    require(corr_gumbel_at(kGumbelLo) < demo.corr_clayton &&
                corr_gumbel_at(kGumbelHi) > demo.corr_clayton,
            ErrorCode::NumericFailure,
            "demo_pitfall: Clayton correlation not bracketed by the Gumbel theta range");
    demo.theta_gumbel =
        num::bisect_increasing(corr_gumbel_at, demo.corr_clayton, kGumbelLo, kGumbelHi, 1e-9);
    demo.corr_gumbel = corr_gumbel_at(demo.theta_gumbel);

    require(std::fabs(demo.corr_clayton - demo.corr_gumbel) < 0.02, ErrorCode::NumericFailure,
            "demo_pitfall: correlation calibration failed to converge within 0.02");

    demo.clayton_xy =
        gaussianized_sample(copula::CopulaFamily::Clayton, demo.theta_clayton, uw_clayton);
    demo.gumbel_xy =
        gaussianized_sample(copula::CopulaFamily::Gumbel, demo.theta_gumbel, uw_gumbel);
    return demo;
}

std::string demo_pitfall_csv(const PitfallDemo& demo) {
    std::ostringstream out;
    out << "model,x,y\n";
    for (const auto& [x, y] : demo.clayton_xy) {
        out << "clayton," << format_double(x) << "," << format_double(y) << "\n";
    }
    for (const auto& [x, y] : demo.gumbel_xy) {
        out << "gumbel," << format_double(x) << "," << format_double(y) << "\n";
    }
    return out.str();
}

} // namespace copsig::sim
