#include "copsig/optimize.hpp"

#include "copsig/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace copsig::num {

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& pts) {
    double diameter = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < pts[i].size(); ++k) {
                const double d = pts[i][k] - pts[j][k];
                d2 += d * d;
            }
            diameter = std::max(diameter, std::sqrt(d2));
        }
    }
    return diameter;
}

double guarded(double v) {
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
}

} // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0,
                             const NelderMeadOptions& options) {
    const std::size_t n = x0.size();
    require(n >= 1, ErrorCode::InvalidArgument, "nelder_mead: empty start point");

    // Reflection / expansion / contraction / shrink coefficients.
    constexpr double kAlpha = 1.0;
    constexpr double kGamma = 2.0;
    constexpr double kRho = 0.5;
    constexpr double kSigma = 0.5;

    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        const double step = options.initial_step * std::fabs(x0[i]);
        pts[i + 1][i] += (step > 0.0) ? step : 2.5e-4;
    }

    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) values[i] = guarded(f(pts[i]));

    NelderMeadResult result;
    std::vector<std::size_t> order(n + 1);

    for (result.iterations = 0; result.iterations < options.max_iterations; ++result.iterations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

        if (simplex_diameter(pts) < options.diameter_tolerance) {
            result.converged = true;
            break;
        }

        const std::size_t best = order[0];
        const std::size_t second_worst = order[n - 1];
        const std::size_t worst = order[n];

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t k = 0; k < n; ++k) {
                p[k] = centroid[k] + coeff * (centroid[k] - pts[worst][k]);
            }
            return p;
        };

        const std::vector<double> reflected = blend(kAlpha);
        const double f_reflected = guarded(f(reflected));

        if (f_reflected < values[best]) {
            const std::vector<double> expanded = blend(kGamma);
            const double f_expanded = guarded(f(expanded));
            if (f_expanded < f_reflected) {
                pts[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                pts[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[second_worst]) {
            pts[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }

        const std::vector<double> contracted = blend(-kRho);
        const double f_contracted = guarded(f(contracted));
        if (f_contracted < values[worst]) {
            pts[worst] = contracted;
            values[worst] = f_contracted;
            continue;
        }

        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < n; ++k) {
                pts[i][k] = pts[best][k] + kSigma * (pts[i][k] - pts[best][k]);
            }
            values[i] = guarded(f(pts[i]));
        }
    }

    const std::size_t best =
        static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    result.x = pts[best];
    result.value = values[best];
    return result;
}

double golden_section_maximize(const std::function<double(double)>& g,
                               double lo, double hi, double tolerance) {
    require(lo < hi, ErrorCode::InvalidArgument, "golden_section_maximize: empty interval");

    constexpr double kInvPhi = 0.6180339887498948482;
    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double gc = g(c);
    double gd = g(d);

    while (b - a > tolerance) {
        if (gc > gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - kInvPhi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + kInvPhi * (b - a);
            gd = g(d);
        }
    }

    double x = 0.5 * (a + b);
    double gx = g(x);

    // One Newton polish step when the finite-difference curvature is usable.
    const double h = std::max(1e-7, 1e-7 * std::fabs(x));
    if (x - h > lo && x + h < hi) {
        const double gp = g(x + h);
        const double gm = g(x - h);
        const double d1 = (gp - gm) / (2.0 * h);
        const double d2 = (gp - 2.0 * gx + gm) / (h * h);
        if (std::isfinite(d1) && std::isfinite(d2) && d2 < 0.0) {
            const double candidate = x - d1 / d2;
            if (candidate > lo && candidate < hi) {
                const double gc2 = g(candidate);
                if (std::isfinite(gc2) && gc2 > gx) x = candidate;
            }
        }
    }
    return x;
}

double bisect_increasing(const std::function<double(double)>& f,
                         double target, double lo, double hi,
                         double tolerance) {
    require(lo < hi, ErrorCode::InvalidArgument, "bisect_increasing: empty bracket");
    double a = lo;
    double b = hi;
    // ~50 halvings take a unit bracket far below 1e-12; cap for safety.
    for (int iter = 0; iter < 200 && b - a > tolerance; ++iter) {
        const double mid = 0.5 * (a + b);
        if (f(mid) < target) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

double invert_cdf(const std::function<double(double)>& cdf,
                  const std::function<double(double)>& pdf,
                  double p, double initial_guess, double scale_hint) {
    require(p > 0.0 && p < 1.0, ErrorCode::OutOfRange,
            "invert_cdf: p must lie strictly inside (0, 1)");

    // Grow a bracket [lo, hi] with cdf(lo) <= p <= cdf(hi).
    double step = std::max(scale_hint, 1e-12);
    double lo = initial_guess;
    double hi = initial_guess;
    for (int i = 0; i < 200 && cdf(lo) > p; ++i) {
        hi = lo;
        lo -= step;
        step *= 2.0;
    }
    step = std::max(scale_hint, 1e-12);
    for (int i = 0; i < 200 && cdf(hi) < p; ++i) {
        lo = std::max(lo, hi);
        hi += step;
        step *= 2.0;
    }
    require(cdf(lo) <= p && cdf(hi) >= p, ErrorCode::NumericFailure,
            "invert_cdf: failed to bracket the quantile");

    double x = std::clamp(initial_guess, lo, hi);
    for (int iter = 0; iter < 100; ++iter) {
        const double err = cdf(x) - p;
        if (err > 0.0) {
            hi = x;
        } else {
            lo = x;
        }
        if (std::fabs(err) < 1e-15 || hi - lo < 1e-15 * (1.0 + std::fabs(x))) break;

        const double density = pdf(x);
        double next = (density > 0.0) ? x - err / density : std::numeric_limits<double>::quiet_NaN();
        if (!std::isfinite(next) || next <= lo || next >= hi) {
            next = 0.5 * (lo + hi);
        }
        x = next;
    }
    return x;
}

} // namespace copsig::num
