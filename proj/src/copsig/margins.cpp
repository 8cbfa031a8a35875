#include "copsig/margins.hpp"

#include "copsig/errors.hpp"
#include "copsig/optimize.hpp"
#include "copsig/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace copsig::margins {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogPi = 1.1447298858494001741;

// Student-t degrees of freedom are searched on a log scale within these
// bounds. Above ~1e6 the family is numerically indistinguishable from the
// Gaussian and the lgamma difference loses precision.
constexpr double kNuMin = 1e-2;
constexpr double kNuMax = 1e6;

double sample_median(std::vector<double> xs) {
    const std::size_t n = xs.size();
    std::nth_element(xs.begin(), xs.begin() + n / 2, xs.end());
    const double upper = xs[n / 2];
    if (n % 2 == 1) return upper;
    std::nth_element(xs.begin(), xs.begin() + n / 2 - 1, xs.end());
    return 0.5 * (upper + xs[n / 2 - 1]);
}

double sample_iqr(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return xs[(3 * n) / 4] - xs[n / 4];
}

double biased_stddev(std::span<const double> xs, double mean) {
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(xs.size()));
}

void check_fit_input(std::span<const double> samples) {
    require(samples.size() >= 8, ErrorCode::TooFewSamples,
            "fit_mle: need at least 8 samples, got " + std::to_string(samples.size()));
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    require(*mn < *mx, ErrorCode::DegenerateSample,
            "fit_mle: all samples identical, zero variance");
}

// Robust positive scale seed: half IQR, falling back to the spread of the
// data when the central half is flat.
double scale_seed(std::span<const double> xs) {
    const double iqr = sample_iqr({xs.begin(), xs.end()});
    if (iqr > 0.0) return 0.5 * iqr;
    const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
    return std::max(1e-8, 0.25 * (*mx - *mn));
}

MarginalModel run_nelder_mead_fit(
    std::span<const double> samples, MarginalFamily family,
    const std::vector<double>& start,
    const std::function<MarginalParams(const std::vector<double>&)>& decode) {
    const auto objective = [&](const std::vector<double>& t) {
        return -loglik(decode(t), samples);
    };

    const num::NelderMeadResult res = num::nelder_mead(objective, start);
    if (!res.converged || !std::isfinite(res.value)) {
        std::ostringstream msg;
        msg << "fit_mle(" << family_name(family) << "): optimizer failed after "
            << res.iterations << " iterations; best objective " << res.value << " at (";
        for (std::size_t i = 0; i < res.x.size(); ++i) {
            msg << (i ? ", " : "") << res.x[i];
        }
        msg << ")";
        raise(ErrorCode::NonConvergence, msg.str());
    }

    MarginalModel model;
    model.params = decode(res.x);
    model.loglik = -res.value;
    model.aic = aic(model.loglik, parameter_count(family));
    model.n = samples.size();
    return model;
}

} // namespace

const char* family_name(MarginalFamily family) {
    switch (family) {
        case MarginalFamily::Gaussian: return "gaussian";
        case MarginalFamily::StudentT: return "student_t";
        case MarginalFamily::Cauchy: return "cauchy";
    }
    return "?";
}

MarginalFamily family_from_name(const std::string& name) {
    if (name == "gaussian") return MarginalFamily::Gaussian;
    if (name == "student_t") return MarginalFamily::StudentT;
    if (name == "cauchy") return MarginalFamily::Cauchy;
    raise(ErrorCode::InvalidArgument, "unknown marginal family '" + name + "'");
}

int parameter_count(MarginalFamily family) {
    return family == MarginalFamily::StudentT ? 3 : 2;
}

MarginalFamily family_of(const MarginalParams& params) {
    return static_cast<MarginalFamily>(params.index());
}

void validate(const MarginalParams& params) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                require(std::isfinite(p.mu) && std::isfinite(p.sigma) && p.sigma > 0.0,
                        ErrorCode::InvalidArgument, "Gaussian: sigma must be positive");
            } else if constexpr (std::is_same_v<T, StudentT>) {
                require(std::isfinite(p.nu) && p.nu > 0.0 && std::isfinite(p.loc) &&
                            std::isfinite(p.scale) && p.scale > 0.0,
                        ErrorCode::InvalidArgument, "StudentT: nu and scale must be positive");
            } else {
                require(std::isfinite(p.x0) && std::isfinite(p.gamma) && p.gamma > 0.0,
                        ErrorCode::InvalidArgument, "Cauchy: gamma must be positive");
            }
        },
        params);
}

double log_pdf(const MarginalParams& params, double x) {
    validate(params);
    return std::visit(
        [x](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                const double z = (x - p.mu) / p.sigma;
                return -0.5 * z * z - std::log(p.sigma) - 0.5 * std::log(2.0 * kPi);
            } else if constexpr (std::is_same_v<T, StudentT>) {
                const double z = (x - p.loc) / p.scale;
                return std::lgamma(0.5 * (p.nu + 1.0)) - std::lgamma(0.5 * p.nu) -
                       0.5 * std::log(p.nu) - 0.5 * kLogPi - std::log(p.scale) -
                       0.5 * (p.nu + 1.0) * std::log1p(z * z / p.nu);
            } else {
                const double z = (x - p.x0) / p.gamma;
                return -std::log(kPi * p.gamma) - std::log1p(z * z);
            }
        },
        params);
}

double pdf(const MarginalParams& params, double x) {
    return std::exp(log_pdf(params, x));
}

double cdf(const MarginalParams& params, double x) {
    validate(params);
    return std::visit(
        [x](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                return num::normal_cdf((x - p.mu) / p.sigma);
            } else if constexpr (std::is_same_v<T, StudentT>) {
                const double z = (x - p.loc) / p.scale;
                if (z == 0.0) return 0.5;
                const double w = num::incomplete_beta(0.5 * p.nu, 0.5, p.nu / (p.nu + z * z));
                return z < 0.0 ? 0.5 * w : 1.0 - 0.5 * w;
            } else {
                return 0.5 + std::atan2(x - p.x0, p.gamma) / kPi;
            }
        },
        params);
}

double quantile(const MarginalParams& params, double p) {
    validate(params);
    require(p > 0.0 && p < 1.0, ErrorCode::OutOfRange,
            "quantile: p must lie strictly inside (0, 1)");
    return std::visit(
        [p, &params](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                return m.mu + m.sigma * num::normal_quantile(p);
            } else if constexpr (std::is_same_v<T, StudentT>) {
                if (p == 0.5) return m.loc;
                const double z = num::normal_quantile(p);
                const double guess = m.loc + m.scale * z * (1.0 + (z * z + 1.0) / (4.0 * m.nu));
                return num::invert_cdf([&](double x) { return cdf(params, x); },
                                       [&](double x) { return pdf(params, x); },
                                       p, guess, m.scale);
            } else {
                return m.x0 + m.gamma * std::tan(kPi * (p - 0.5));
            }
        },
        params);
}

double location(const MarginalParams& params) {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                return p.mu;
            } else if constexpr (std::is_same_v<T, StudentT>) {
                return p.loc;
            } else {
                return p.x0;
            }
        },
        params);
}

double loglik(const MarginalParams& params, std::span<const double> xs) {
    double total = 0.0;
    for (double x : xs) total += log_pdf(params, x);
    return total;
}

double aic(double loglik_value, int k) {
    require(k >= 1, ErrorCode::InvalidArgument, "aic: k must be >= 1");
    return 2.0 * k - 2.0 * loglik_value;
}

MarginalModel fit_mle(std::span<const double> samples, MarginalFamily family) {
    check_fit_input(samples);

    switch (family) {
        case MarginalFamily::Gaussian: {
            double mean = 0.0;
            for (double x : samples) mean += x;
            mean /= static_cast<double>(samples.size());
            const Gaussian params{mean, biased_stddev(samples, mean)};
            MarginalModel model;
            model.params = params;
            model.loglik = loglik(model.params, samples);
            model.aic = aic(model.loglik, 2);
            model.n = samples.size();
            return model;
        }
        case MarginalFamily::StudentT: {
            const double loc0 = sample_median({samples.begin(), samples.end()});
            const double scale0 = scale_seed(samples);
            const std::vector<double> start{std::log(5.0), loc0, std::log(scale0)};
            return run_nelder_mead_fit(
                samples, family, start, [](const std::vector<double>& t) -> MarginalParams {
                    const double nu = std::clamp(std::exp(t[0]), kNuMin, kNuMax);
                    return StudentT{nu, t[1], std::exp(t[2])};
                });
        }
        case MarginalFamily::Cauchy: {
            const double x00 = sample_median({samples.begin(), samples.end()});
            const double gamma0 = scale_seed(samples);
            const std::vector<double> start{x00, std::log(gamma0)};
            return run_nelder_mead_fit(
                samples, family, start, [](const std::vector<double>& t) -> MarginalParams {
                    return Cauchy{t[0], std::exp(t[1])};
                });
        }
    }
    raise(ErrorCode::InvalidArgument, "fit_mle: unknown family");
}

MarginalModel select_marginal(std::span<const double> samples,
                              std::span<const MarginalFamily> families) {
    require(!families.empty(), ErrorCode::InvalidArgument,
            "select_marginal: family list is empty");
    check_fit_input(samples);

    bool have_best = false;
    MarginalModel best;
    std::string failures;
    for (MarginalFamily family : families) {
        MarginalModel candidate;
        try {
            candidate = fit_mle(samples, family);
        } catch (const Error& e) {
            failures += std::string(failures.empty() ? "" : "; ") + family_name(family) + ": " +
                        e.what();
            continue;
        }
        const auto rank = [](const MarginalModel& m) {
            return std::make_tuple(m.aic, parameter_count(m.family()),
                                   static_cast<int>(m.family()));
        };
        if (!have_best || rank(candidate) < rank(best)) {
            best = candidate;
            have_best = true;
        }
    }
    require(have_best, ErrorCode::AllFitsFailed, "select_marginal: no family converged (" + failures + ")");
    return best;
}

std::vector<double> sample(const MarginalParams& params, std::size_t n, Rng& rng) {
    validate(params);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(quantile(params, rng.uniform01()));
    }
    return out;
}

} // namespace copsig::margins
