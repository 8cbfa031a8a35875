// signals.hpp
// Decision layer: PIT of spreads through fitted marginals, h-function
// evaluation, and the epsilon threshold rules for mispricing verdicts.

#pragma once

#include "copsig/copula.hpp"
#include "copsig/ingest.hpp"
#include "copsig/margins.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace copsig::signals {

enum class Verdict { NoSignal = 0, Asset1Underpriced = 1, Asset2Underpriced = 2 };

const char* verdict_name(Verdict verdict);

struct Signal {
    std::int64_t timestamp = 0;
    double u = 0.0;
    double v = 0.0;
    double h12 = 0.0; // P[U <= u | V = v]
    double h21 = 0.0; // P[V <= v | U = u]
    Verdict verdict = Verdict::NoSignal;
};

// u_t = cdf(model, spread_t), clamped to [1e-10, 1 - 1e-10] so downstream
// h-functions never see an exact boundary.
std::vector<std::pair<std::int64_t, double>> pit_transform(
    const ingest::SpreadSeries& spread, const margins::MarginalModel& model);

// Strict threshold rules; equality at a threshold yields NoSignal.
//   Asset1Underpriced iff h12 < eps and h21 > 1 - eps
//   Asset2Underpriced iff h12 > 1 - eps and h21 < eps
// Requires h12, h21 in [0, 1] and eps in (0, 0.5) (EpsilonOutOfRange).
Verdict evaluate_signal(double h12, double h21, double epsilon);

// Per-timestamp signals over the intersection of the two spread series,
// ordered by timestamp. With an empirical-PIT fit, u and v come from ranks
// within the aligned sample instead of the parametric marginal CDFs.
std::vector<Signal> signal_series(const ingest::SpreadSeries& spread1,
                                  const ingest::SpreadSeries& spread2,
                                  const copula::JointFit& fit, double epsilon);

} // namespace copsig::signals
