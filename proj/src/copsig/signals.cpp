#include "copsig/signals.hpp"

#include "copsig/errors.hpp"

#include <algorithm>
#include <cmath>

namespace copsig::signals {

namespace {

constexpr double kPitClamp = 1e-10;

double clamp_unit(double u) {
    return std::clamp(u, kPitClamp, 1.0 - kPitClamp);
}

void check_epsilon(double epsilon) {
    require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon < 0.5,
            ErrorCode::EpsilonOutOfRange,
            "epsilon must lie strictly inside (0, 0.5), got " + std::to_string(epsilon));
}

} // namespace

const char* verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::NoSignal: return "no_signal";
        case Verdict::Asset1Underpriced: return "asset1_underpriced";
        case Verdict::Asset2Underpriced: return "asset2_underpriced";
    }
    return "?";
}

std::vector<std::pair<std::int64_t, double>> pit_transform(
    const ingest::SpreadSeries& spread, const margins::MarginalModel& model) {
    require(!spread.observations.empty(), ErrorCode::InvalidArgument,
            "pit_transform: empty spread series");
    std::vector<std::pair<std::int64_t, double>> out;
    out.reserve(spread.observations.size());
    for (const ingest::ValuePoint& p : spread.observations) {
        out.emplace_back(p.timestamp, clamp_unit(margins::cdf(model.params, p.value)));
    }
    return out;
}

Verdict evaluate_signal(double h12, double h21, double epsilon) {
    check_epsilon(epsilon);
    require(h12 >= 0.0 && h12 <= 1.0 && h21 >= 0.0 && h21 <= 1.0,
            ErrorCode::InvalidArgument, "evaluate_signal: h values must lie in [0, 1]");

    if (h12 < epsilon && h21 > 1.0 - epsilon) return Verdict::Asset1Underpriced;
    if (h12 > 1.0 - epsilon && h21 < epsilon) return Verdict::Asset2Underpriced;
    return Verdict::NoSignal;
}

std::vector<Signal> signal_series(const ingest::SpreadSeries& spread1,
                                  const ingest::SpreadSeries& spread2,
                                  const copula::JointFit& fit, double epsilon) {
    check_epsilon(epsilon);

    // Inner join of the two spread series on timestamps.
    std::vector<std::int64_t> ts;
    std::vector<double> s1;
    std::vector<double> s2;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < spread1.observations.size() && j < spread2.observations.size()) {
        const auto& a = spread1.observations[i];
        const auto& b = spread2.observations[j];
        if (a.timestamp == b.timestamp) {
            ts.push_back(a.timestamp);
            s1.push_back(a.value);
            s2.push_back(b.value);
            ++i;
            ++j;
        } else if (a.timestamp < b.timestamp) {
            ++i;
        } else {
            ++j;
        }
    }
    require(!ts.empty(), ErrorCode::InsufficientOverlap,
            "signal_series: the spread series share no timestamps");

    std::vector<double> u;
    std::vector<double> v;
    if (fit.pit == copula::PitMode::Parametric) {
        u.reserve(s1.size());
        v.reserve(s2.size());
        for (double x : s1) u.push_back(clamp_unit(margins::cdf(fit.marginal1.params, x)));
        for (double y : s2) v.push_back(clamp_unit(margins::cdf(fit.marginal2.params, y)));
    } else {
        u = copula::empirical_pit(s1);
        v = copula::empirical_pit(s2);
    }

    std::vector<Signal> out;
    out.reserve(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        Signal sig;
        sig.timestamp = ts[k];
        sig.u = u[k];
        sig.v = v[k];
        sig.h12 = copula::h_u_given_v(fit.copula.family, fit.copula.theta, u[k], v[k]);
        sig.h21 = copula::h_v_given_u(fit.copula.family, fit.copula.theta, u[k], v[k]);
        sig.verdict = evaluate_signal(sig.h12, sig.h21, epsilon);
        out.push_back(sig);
    }
    return out;
}

} // namespace copsig::signals
