#include "copsig/copula.hpp"

#include "copsig/errors.hpp"
#include "copsig/optimize.hpp"
#include "copsig/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace copsig::copula {

namespace {

constexpr double kPitClamp = 1e-10;

double clamp_unit(double u) {
    return std::clamp(u, kPitClamp, 1.0 - kPitClamp);
}

void check_unit_interval(double u, double v) {
    require(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0, ErrorCode::InvalidArgument,
            "copula arguments must lie in [0, 1]");
}

// log(u^-theta + v^-theta - 1) for Clayton, evaluated without overflow.
// The sum is >= 1 for u, v in (0, 1], so the result is >= 0.
double clayton_log_sum(double theta, double u, double v) {
    const double a = -theta * std::log(u);
    const double b = -theta * std::log(v);
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m) - std::exp(-m));
}

// A = ((-ln u)^theta + (-ln v)^theta)^(1/theta) for Gumbel, scaled by the
// larger of the two logs so intermediate powers stay bounded.
double gumbel_a(double theta, double x, double y) {
    const double m = std::max(x, y);
    const double r = std::min(x, y) / m;
    return m * std::exp(std::log1p(std::pow(r, theta)) / theta);
}

double log_density(CopulaFamily family, double theta, double u, double v) {
    switch (family) {
        case CopulaFamily::Independent:
            return 0.0;
        case CopulaFamily::Clayton: {
            const double log_sum = clayton_log_sum(theta, u, v);
            return std::log1p(theta) - (theta + 1.0) * (std::log(u) + std::log(v)) -
                   (1.0 / theta + 2.0) * log_sum;
        }
        case CopulaFamily::Gumbel: {
            const double x = -std::log(u);
            const double y = -std::log(v);
            const double a = gumbel_a(theta, x, y);
            return -a + (theta - 1.0) * (std::log(x) + std::log(y)) +
                   (1.0 - 2.0 * theta) * std::log(a) + std::log(a + theta - 1.0) -
                   std::log(u) - std::log(v);
        }
        case CopulaFamily::EFGM:
            return std::log(1.0 + theta * (1.0 - 2.0 * u) * (1.0 - 2.0 * v));
    }
    raise(ErrorCode::InvalidArgument, "unknown copula family");
}

// Density/h evaluation used by the fitting paths: boundary-safe via clamping.
double log_density_clamped(CopulaFamily family, double theta, double u, double v) {
    return log_density(family, theta, clamp_unit(u), clamp_unit(v));
}

double loglik_at(CopulaFamily family, double theta,
                 std::span<const std::pair<double, double>> uv) {
    double total = 0.0;
    for (const auto& [u, v] : uv) total += log_density_clamped(family, theta, u, v);
    return total;
}

} // namespace

const char* family_name(CopulaFamily family) {
    switch (family) {
        case CopulaFamily::Independent: return "independent";
        case CopulaFamily::Clayton: return "clayton";
        case CopulaFamily::Gumbel: return "gumbel";
        case CopulaFamily::EFGM: return "efgm";
    }
    return "?";
}

CopulaFamily family_from_name(const std::string& name) {
    if (name == "independent") return CopulaFamily::Independent;
    if (name == "clayton") return CopulaFamily::Clayton;
    if (name == "gumbel") return CopulaFamily::Gumbel;
    if (name == "efgm") return CopulaFamily::EFGM;
    raise(ErrorCode::InvalidArgument, "unknown copula family '" + name + "'");
}

int parameter_count(CopulaFamily family) {
    return family == CopulaFamily::Independent ? 0 : 1;
}

void check_theta(CopulaFamily family, double theta) {
    switch (family) {
        case CopulaFamily::Independent:
            return;
        case CopulaFamily::Clayton:
            require(std::isfinite(theta) && theta > 0.0, ErrorCode::ThetaOutOfDomain,
                    "Clayton requires theta > 0");
            return;
        case CopulaFamily::Gumbel:
            require(std::isfinite(theta) && theta >= 1.0, ErrorCode::ThetaOutOfDomain,
                    "Gumbel requires theta >= 1");
            return;
        case CopulaFamily::EFGM:
            require(std::isfinite(theta) && theta >= -1.0 && theta <= 1.0,
                    ErrorCode::ThetaOutOfDomain, "EFGM requires theta in [-1, 1]");
            return;
    }
    raise(ErrorCode::InvalidArgument, "unknown copula family");
}

double copula_cdf(CopulaFamily family, double theta, double u, double v) {
    check_theta(family, theta);
    check_unit_interval(u, v);

    // Boundaries are exact by the copula axioms.
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;

    switch (family) {
        case CopulaFamily::Independent:
            return u * v;
        case CopulaFamily::Clayton:
            return std::exp(-clayton_log_sum(theta, u, v) / theta);
        case CopulaFamily::Gumbel:
            return std::exp(-gumbel_a(theta, -std::log(u), -std::log(v)));
        case CopulaFamily::EFGM:
            return u * v * (1.0 + theta * (1.0 - u) * (1.0 - v));
    }
    raise(ErrorCode::InvalidArgument, "unknown copula family");
}

double copula_density(CopulaFamily family, double theta, double u, double v) {
    check_theta(family, theta);
    check_unit_interval(u, v);
    require(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0, ErrorCode::BoundaryInput,
            "copula_density is undefined on the boundary of the unit square");
    return std::exp(log_density(family, theta, u, v));
}

double h_u_given_v(CopulaFamily family, double theta, double u, double v) {
    check_theta(family, theta);
    check_unit_interval(u, v);
    require(v > 0.0 && v < 1.0, ErrorCode::BoundaryInput,
            "h_u_given_v requires the conditioning value v strictly inside (0, 1)");

    if (u == 0.0) return 0.0;
    if (u == 1.0) return 1.0;

    switch (family) {
        case CopulaFamily::Independent:
            return u;
        case CopulaFamily::Clayton: {
            const double log_sum = clayton_log_sum(theta, u, v);
            return std::exp(-(theta + 1.0) * std::log(v) - (1.0 / theta + 1.0) * log_sum);
        }
        case CopulaFamily::Gumbel: {
            const double x = -std::log(u);
            const double y = -std::log(v);
            const double a = gumbel_a(theta, x, y);
            return std::exp(-a + (1.0 - theta) * (std::log(a) - std::log(y)) - std::log(v));
        }
        case CopulaFamily::EFGM:
            return u + theta * u * (1.0 - u) * (1.0 - 2.0 * v);
    }
    raise(ErrorCode::InvalidArgument, "unknown copula family");
}

double h_v_given_u(CopulaFamily family, double theta, double u, double v) {
    return h_u_given_v(family, theta, v, u);
}

double h_v_given_u_inverse(CopulaFamily family, double theta, double u, double w) {
    check_theta(family, theta);
    require(u > 0.0 && u < 1.0 && w > 0.0 && w < 1.0, ErrorCode::BoundaryInput,
            "h_v_given_u_inverse requires u, w strictly inside (0, 1)");

    switch (family) {
        case CopulaFamily::Independent:
            return w;
        case CopulaFamily::Clayton: {
            // v = [u^-theta (w^(-theta/(1+theta)) - 1) + 1]^(-1/theta), in logs.
            const double log_term = -theta * std::log(u) +
                                    std::log(std::expm1(-theta / (1.0 + theta) * std::log(w)));
            const double log_v_pow = (log_term > 0.0)
                                         ? log_term + std::log1p(std::exp(-log_term))
                                         : std::log1p(std::exp(log_term));
            return std::exp(-log_v_pow / theta);
        }
        case CopulaFamily::Gumbel:
        case CopulaFamily::EFGM: {
            const auto h = [&](double v) { return h_v_given_u(family, theta, u, v); };
            return num::bisect_increasing(h, w, 1e-15, 1.0 - 1e-15, 1e-12);
        }
    }
    raise(ErrorCode::InvalidArgument, "unknown copula family");
}

std::vector<std::pair<double, double>> sample_copula(CopulaFamily family, double theta,
                                                     std::size_t n, std::uint64_t seed) {
    check_theta(family, theta);
    require(n >= 1, ErrorCode::InvalidArgument, "sample_copula: n must be >= 1");

    Rng rng(seed);
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        const double w = rng.uniform01();
        out.emplace_back(u, h_v_given_u_inverse(family, theta, u, w));
    }
    return out;
}

double copula_aic(const CopulaModel& model) {
    return 2.0 * parameter_count(model.family) - 2.0 * model.loglik;
}

CopulaModel fit_copula_ifm(std::span<const std::pair<double, double>> uv,
                           CopulaFamily family) {
    require(uv.size() >= 16, ErrorCode::TooFewSamples,
            "fit_copula_ifm: need at least 16 pairs, got " + std::to_string(uv.size()));
    for (const auto& [u, v] : uv) {
        require(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0, ErrorCode::BoundaryInput,
                "fit_copula_ifm: all components must lie strictly inside (0, 1)");
    }

    CopulaModel model;
    model.family = family;
    model.n = uv.size();

    if (family == CopulaFamily::Independent) {
        model.theta = 0.0;
        model.loglik = 0.0;
        return model;
    }

    double theta_hat = 0.0;
    switch (family) {
        case CopulaFamily::Clayton: {
            const auto g = [&](double s) { return loglik_at(family, std::exp(s), uv); };
            theta_hat = std::exp(num::golden_section_maximize(g, std::log(1e-3), std::log(200.0)));
            break;
        }
        case CopulaFamily::Gumbel: {
            const auto g = [&](double s) { return loglik_at(family, std::exp(s), uv); };
            theta_hat = std::exp(num::golden_section_maximize(g, 0.0, std::log(100.0)));
            theta_hat = std::max(theta_hat, 1.0);
            break;
        }
        case CopulaFamily::EFGM: {
            const auto g = [&](double s) {
                return loglik_at(family, std::clamp(s, -1.0, 1.0), uv);
            };
            theta_hat = std::clamp(num::golden_section_maximize(g, -1.0, 1.0), -1.0, 1.0);
            break;
        }
        default:
            raise(ErrorCode::InvalidArgument, "unknown copula family");
    }

    model.theta = theta_hat;
    model.loglik = loglik_at(family, theta_hat, uv);
    require(std::isfinite(model.loglik), ErrorCode::NonConvergence,
            std::string("fit_copula_ifm(") + family_name(family) +
                "): likelihood not finite at the optimum");
    return model;
}

const char* fit_method_name(FitMethod method) {
    return method == FitMethod::IFM ? "ifm" : "full_mle";
}

const char* pit_mode_name(PitMode mode) {
    return mode == PitMode::Parametric ? "parametric" : "empirical";
}

std::vector<double> parametric_pit(const margins::MarginalParams& params,
                                   std::span<const double> xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(clamp_unit(margins::cdf(params, x)));
    return out;
}

std::vector<double> empirical_pit(std::span<const double> xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

    // Midranks: tied values share the average of their rank positions.
    std::vector<double> pit(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            pit[order[k]] = midrank / static_cast<double>(n + 1);
        }
        i = j + 1;
    }
    return pit;
}

namespace {

// Unconstrained transform for one marginal's parameters, used by FullMLE.
struct MarginalCodec {
    margins::MarginalFamily family;

    std::vector<double> encode(const margins::MarginalParams& p) const {
        using namespace margins;
        switch (family) {
            case MarginalFamily::Gaussian: {
                const auto& g = std::get<Gaussian>(p);
                return {g.mu, std::log(g.sigma)};
            }
            case MarginalFamily::StudentT: {
                const auto& t = std::get<StudentT>(p);
                return {std::log(t.nu), t.loc, std::log(t.scale)};
            }
            case MarginalFamily::Cauchy: {
                const auto& c = std::get<Cauchy>(p);
                return {c.x0, std::log(c.gamma)};
            }
        }
        raise(ErrorCode::InvalidArgument, "unknown marginal family");
    }

    margins::MarginalParams decode(std::span<const double> t) const {
        using namespace margins;
        switch (family) {
            case MarginalFamily::Gaussian:
                return Gaussian{t[0], std::exp(t[1])};
            case MarginalFamily::StudentT:
                return StudentT{std::clamp(std::exp(t[0]), 1e-2, 1e6), t[1], std::exp(t[2])};
            case MarginalFamily::Cauchy:
                return Cauchy{t[0], std::exp(t[1])};
        }
        raise(ErrorCode::InvalidArgument, "unknown marginal family");
    }

    std::size_t size() const {
        return family == margins::MarginalFamily::StudentT ? 3 : 2;
    }
};

// Copula parameter transform for FullMLE; keeps theta inside its domain.
struct ThetaCodec {
    CopulaFamily family;

    double encode(double theta) const {
        switch (family) {
            case CopulaFamily::Independent: return 0.0;
            case CopulaFamily::Clayton: return std::log(theta);
            case CopulaFamily::Gumbel: return std::log(std::max(theta - 1.0, 1e-8));
            case CopulaFamily::EFGM: return std::atanh(std::clamp(theta, -0.999999, 0.999999));
        }
        raise(ErrorCode::InvalidArgument, "unknown copula family");
    }

    double decode(double s) const {
        switch (family) {
            case CopulaFamily::Independent: return 0.0;
            case CopulaFamily::Clayton: return std::exp(s);
            case CopulaFamily::Gumbel: return 1.0 + std::exp(s);
            case CopulaFamily::EFGM: return std::tanh(s);
        }
        raise(ErrorCode::InvalidArgument, "unknown copula family");
    }

    std::size_t size() const {
        return family == CopulaFamily::Independent ? 0 : 1;
    }
};

double joint_loglik(const margins::MarginalParams& p1, const margins::MarginalParams& p2,
                    CopulaFamily family, double theta,
                    std::span<const double> x, std::span<const double> y) {
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = margins::cdf(p1, x[i]);
        const double v = margins::cdf(p2, y[i]);
        total += log_density_clamped(family, theta, u, v) + margins::log_pdf(p1, x[i]) +
                 margins::log_pdf(p2, y[i]);
    }
    return total;
}

} // namespace

JointFit fit_joint(std::span<const double> x, std::span<const double> y,
                   std::span<const margins::MarginalFamily> marginal_families,
                   std::span<const CopulaFamily> copula_families,
                   const FitOptions& options) {
    require(x.size() == y.size(), ErrorCode::LengthMismatch,
            "fit_joint: series lengths differ (" + std::to_string(x.size()) + " vs " +
                std::to_string(y.size()) + ")");
    require(x.size() >= 16, ErrorCode::TooFewSamples,
            "fit_joint: need at least 16 observations");
    require(!copula_families.empty(), ErrorCode::InvalidArgument,
            "fit_joint: copula family list is empty");
    require(options.method == FitMethod::IFM || options.pit == PitMode::Parametric,
            ErrorCode::InvalidArgument, "fit_joint: full MLE requires parametric PIT");

    JointFit fit;
    fit.method = options.method;
    fit.pit = options.pit;
    fit.marginal1 = margins::select_marginal(x, marginal_families);
    fit.marginal2 = margins::select_marginal(y, marginal_families);

    std::vector<double> u;
    std::vector<double> v;
    if (options.pit == PitMode::Parametric) {
        u = parametric_pit(fit.marginal1.params, x);
        v = parametric_pit(fit.marginal2.params, y);
    } else {
        u = empirical_pit(x);
        v = empirical_pit(y);
    }
    std::vector<std::pair<double, double>> uv;
    uv.reserve(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) uv.emplace_back(u[i], v[i]);

    bool have_best = false;
    std::string failures;
    for (CopulaFamily family : copula_families) {
        CopulaModel candidate;
        try {
            candidate = fit_copula_ifm(uv, family);
        } catch (const Error& e) {
            failures += std::string(failures.empty() ? "" : "; ") + family_name(family) + ": " +
                        e.what();
            continue;
        }
        const auto rank = [](const CopulaModel& m) {
            return std::make_tuple(copula_aic(m), parameter_count(m.family),
                                   static_cast<int>(m.family));
        };
        if (!have_best || rank(candidate) < rank(fit.copula)) {
            fit.copula = candidate;
            have_best = true;
        }
    }
    require(have_best, ErrorCode::AllFitsFailed,
            "fit_joint: no copula family converged (" + failures + ")");

    if (options.method == FitMethod::FullMLE) {
        const MarginalCodec codec1{fit.marginal1.family()};
        const MarginalCodec codec2{fit.marginal2.family()};
        const ThetaCodec theta_codec{fit.copula.family};

        std::vector<double> start = codec1.encode(fit.marginal1.params);
        const std::vector<double> start2 = codec2.encode(fit.marginal2.params);
        start.insert(start.end(), start2.begin(), start2.end());
        if (theta_codec.size() > 0) start.push_back(theta_codec.encode(fit.copula.theta));

        const std::size_t n1 = codec1.size();
        const std::size_t n2 = codec2.size();
        const auto decode_all = [&](const std::vector<double>& t) {
            const auto p1 = codec1.decode({t.data(), n1});
            const auto p2 = codec2.decode({t.data() + n1, n2});
            const double theta =
                theta_codec.size() > 0 ? theta_codec.decode(t[n1 + n2]) : 0.0;
            return std::make_tuple(p1, p2, theta);
        };

        const auto objective = [&](const std::vector<double>& t) {
            const auto [p1, p2, theta] = decode_all(t);
            return -joint_loglik(p1, p2, fit.copula.family, theta, x, y);
        };
        const num::NelderMeadResult res = num::nelder_mead(objective, start);
        require(std::isfinite(res.value), ErrorCode::NonConvergence,
                "fit_joint: full MLE produced a non-finite likelihood");

        const auto [p1, p2, theta] = decode_all(res.x);
        fit.marginal1.params = p1;
        fit.marginal1.loglik = margins::loglik(p1, x);
        fit.marginal1.aic =
            margins::aic(fit.marginal1.loglik, margins::parameter_count(fit.marginal1.family()));
        fit.marginal2.params = p2;
        fit.marginal2.loglik = margins::loglik(p2, y);
        fit.marginal2.aic =
            margins::aic(fit.marginal2.loglik, margins::parameter_count(fit.marginal2.family()));
        fit.copula.theta = theta;

        const std::vector<double> u2 = parametric_pit(p1, x);
        const std::vector<double> v2 = parametric_pit(p2, y);
        double copula_ll = 0.0;
        for (std::size_t i = 0; i < u2.size(); ++i) {
            copula_ll += log_density_clamped(fit.copula.family, theta, u2[i], v2[i]);
        }
        fit.copula.loglik = copula_ll;
    }

    fit.total_loglik = fit.marginal1.loglik + fit.marginal2.loglik + fit.copula.loglik;
    return fit;
}

} // namespace copsig::copula
