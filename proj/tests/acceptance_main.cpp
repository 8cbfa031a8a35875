// acceptance_main.cpp
// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits with the number of failed criteria.

#include "copsig/copula.hpp"
#include "copsig/margins.hpp"
#include "copsig/pairs.hpp"
#include "copsig/rng.hpp"
#include "copsig/signals.hpp"
#include "copsig/special_functions.hpp"
#include "support/oracles.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

using namespace copsig;

namespace {

const std::string kCli = COPSIG_CLI_PATH;

struct CommandResult {
    int exit_code = -1;
    std::string out;
};

CommandResult run_cli(const std::string& args) {
    const std::string command = kCli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    CommandResult result;
    if (!pipe) return result;
    std::array<char, 8192> buffer{};
    size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.out.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

struct Check {
    bool pass = true;
    std::string detail;

    void fail(const std::string& message) {
        if (pass) detail = message; // keep the first failure
        pass = false;
    }
    void expect(bool condition, const std::string& message) {
        if (!condition) fail(message);
    }
};

double random_theta(copula::CopulaFamily family, Rng& rng) {
    switch (family) {
        case copula::CopulaFamily::Independent: return 0.0;
        case copula::CopulaFamily::Clayton: return std::exp(std::log(0.05) +
                                                            (std::log(30.0) - std::log(0.05)) *
                                                                rng.uniform01());
        case copula::CopulaFamily::Gumbel: return 1.0 + 14.0 * rng.uniform01();
        case copula::CopulaFamily::EFGM: return 2.0 * rng.uniform01() - 1.0;
    }
    return 0.0;
}

std::string format_double(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

// ---------------------------------------------------------------------
// Criterion 1: copula axioms, 20 random thetas per family, 50x50 grid.
// ---------------------------------------------------------------------
Check criterion_axioms() {
    Check check;
    const std::vector<copula::CopulaFamily> families{
        copula::CopulaFamily::Independent, copula::CopulaFamily::Clayton,
        copula::CopulaFamily::Gumbel, copula::CopulaFamily::EFGM};
    Rng rng(90001);
    for (copula::CopulaFamily family : families) {
        const int repeats = family == copula::CopulaFamily::Independent ? 1 : 20;
        for (int rep = 0; rep < repeats; ++rep) {
            const double theta = random_theta(family, rng);

            for (int i = 0; i <= 50; ++i) {
                const double u = i / 50.0;
                check.expect(std::fabs(copula::copula_cdf(family, theta, u, 1.0) - u) <= 1e-12,
                             std::string(copula::family_name(family)) + ": C(u,1) != u");
                check.expect(std::fabs(copula::copula_cdf(family, theta, 1.0, u) - u) <= 1e-12,
                             std::string(copula::family_name(family)) + ": C(1,v) != v");
                check.expect(copula::copula_cdf(family, theta, u, 0.0) == 0.0,
                             std::string(copula::family_name(family)) + ": C(u,0) != 0");
                check.expect(copula::copula_cdf(family, theta, 0.0, u) == 0.0,
                             std::string(copula::family_name(family)) + ": C(0,v) != 0");
            }

            std::array<std::array<double, 51>, 51> grid{};
            for (int i = 0; i <= 50; ++i) {
                for (int j = 0; j <= 50; ++j) {
                    grid[i][j] = copula::copula_cdf(family, theta, i / 50.0, j / 50.0);
                }
            }
            for (int i = 0; i < 50; ++i) {
                for (int j = 0; j < 50; ++j) {
                    const double mass =
                        grid[i + 1][j + 1] - grid[i][j + 1] - grid[i + 1][j] + grid[i][j];
                    check.expect(mass >= -1e-12,
                                 std::string(copula::family_name(family)) +
                                     ": 2-increasing violated at theta " + format_double(theta));
                }
            }
        }
    }
    return check;
}

// ---------------------------------------------------------------------
// Criterion 2: h-functions and density vs finite differences, 30x30.
// ---------------------------------------------------------------------
Check criterion_derivatives() {
    Check check;
    struct Case {
        copula::CopulaFamily family;
        std::vector<double> thetas;
    };
    const std::vector<Case> cases{
        {copula::CopulaFamily::Independent, {0.0}},
        {copula::CopulaFamily::Clayton, {0.5, 2.0, 8.0}},
        {copula::CopulaFamily::Gumbel, {1.3, 2.0, 5.0}},
        {copula::CopulaFamily::EFGM, {-0.8, 0.3, 0.9}},
    };
    for (const Case& c : cases) {
        for (double theta : c.thetas) {
            for (int i = 1; i <= 30; ++i) {
                for (int j = 1; j <= 30; ++j) {
                    const double u = i / 31.0;
                    const double v = j / 31.0;
                    const double dv = oracles::central_difference(
                        [&](double t) { return copula::copula_cdf(c.family, theta, u, t); }, v,
                        1e-6);
                    check.expect(
                        std::fabs(copula::h_u_given_v(c.family, theta, u, v) - dv) < 1e-5,
                        std::string(copula::family_name(c.family)) + ": h12 != dC/dv");
                    const double du = oracles::central_difference(
                        [&](double t) { return copula::copula_cdf(c.family, theta, t, v); }, u,
                        1e-6);
                    check.expect(
                        std::fabs(copula::h_v_given_u(c.family, theta, u, v) - du) < 1e-5,
                        std::string(copula::family_name(c.family)) + ": h21 != dC/du");
                    const double step = 1e-3 * std::min({u, 1.0 - u, v, 1.0 - v});
                    const double mixed = oracles::mixed_difference_richardson(
                        [&](double a, double b) { return copula::copula_cdf(c.family, theta, a, b); },
                        u, v, step);
                    check.expect(
                        std::fabs(copula::copula_density(c.family, theta, u, v) - mixed) < 1e-4,
                        std::string(copula::family_name(c.family)) + ": density != d2C/dudv");
                }
            }
        }
    }
    return check;
}

// ---------------------------------------------------------------------
// Criterion 3: IFM estimator recovery over 20 seeds per (family, theta).
// ---------------------------------------------------------------------
Check criterion_recovery() {
    Check check;
    struct Case {
        copula::CopulaFamily family;
        double theta;
    };
    const std::vector<Case> cases{
        {copula::CopulaFamily::Clayton, 0.5}, {copula::CopulaFamily::Clayton, 2.0},
        {copula::CopulaFamily::Clayton, 5.0}, {copula::CopulaFamily::Gumbel, 1.5},
        {copula::CopulaFamily::Gumbel, 3.0},  {copula::CopulaFamily::EFGM, -0.8},
        {copula::CopulaFamily::EFGM, 0.5},
    };
    for (const Case& c : cases) {
        std::vector<double> estimates;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto uv = copula::sample_copula(c.family, c.theta, 5000, seed);
            estimates.push_back(copula::fit_copula_ifm(uv, c.family).theta);
        }
        const double med = oracles::median(estimates);
        const double sd = oracles::sample_sd(estimates);
        const std::string label = std::string(copula::family_name(c.family)) + " theta " +
                                  format_double(c.theta);
        check.expect(std::fabs(med - c.theta) <= 0.05 * std::fabs(c.theta),
                     label + ": median " + format_double(med) + " off by more than 5%");
        for (double est : estimates) {
            check.expect(std::fabs(est - c.theta) <= 3.0 * sd,
                         label + ": estimate " + format_double(est) + " outside 3 SE (sd " +
                             format_double(sd) + ")");
        }
    }
    return check;
}

// ---------------------------------------------------------------------
// Criterion 4: AIC marginal selection, 10 seeds per generating family.
// ---------------------------------------------------------------------
Check criterion_marginal_selection() {
    Check check;
    const std::vector<margins::MarginalFamily> all{margins::MarginalFamily::Gaussian,
                                                   margins::MarginalFamily::StudentT,
                                                   margins::MarginalFamily::Cauchy};
    int gaussian_hits = 0;
    int cauchy_hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng g_rng(seed);
        const auto g_samples = margins::sample(margins::Gaussian{0.0, 1.0}, 10000, g_rng);
        if (margins::select_marginal(g_samples, all).family() ==
            margins::MarginalFamily::Gaussian) {
            ++gaussian_hits;
        }

        Rng c_rng(seed + 100);
        const auto c_samples = margins::sample(margins::Cauchy{0.0, 1.0}, 10000, c_rng);
        const margins::MarginalModel model = margins::select_marginal(c_samples, all);
        if (model.family() == margins::MarginalFamily::Cauchy) {
            ++cauchy_hits;
        } else if (model.family() == margins::MarginalFamily::StudentT &&
                   std::get<margins::StudentT>(model.params).nu < 2.0) {
            ++cauchy_hits;
        }
    }
    check.expect(gaussian_hits >= 9, "gaussian data: only " + std::to_string(gaussian_hits) +
                                         "/10 seeds selected gaussian");
    check.expect(cauchy_hits >= 9, "cauchy data: only " + std::to_string(cauchy_hits) +
                                       "/10 seeds selected a heavy-tailed match");
    return check;
}

// ---------------------------------------------------------------------
// Criterion 5: full MLE total loglik dominates IFM on 10 datasets.
// ---------------------------------------------------------------------
Check criterion_full_mle_dominance() {
    Check check;
    const std::vector<margins::MarginalFamily> mfams{margins::MarginalFamily::Gaussian,
                                                     margins::MarginalFamily::StudentT,
                                                     margins::MarginalFamily::Cauchy};
    const std::vector<copula::CopulaFamily> cfams{
        copula::CopulaFamily::Independent, copula::CopulaFamily::Clayton,
        copula::CopulaFamily::Gumbel, copula::CopulaFamily::EFGM};

    struct Case {
        copula::CopulaFamily family;
        double theta;
        margins::MarginalParams m1;
        margins::MarginalParams m2;
    };
    const std::vector<Case> cases{
        {copula::CopulaFamily::Clayton, 3.0, margins::Gaussian{0, 1}, margins::Gaussian{1, 2}},
        {copula::CopulaFamily::Clayton, 0.8, margins::StudentT{5, 0, 1}, margins::Gaussian{0, 1}},
        {copula::CopulaFamily::Gumbel, 2.0, margins::Gaussian{-1, 0.5}, margins::Cauchy{0, 1}},
        {copula::CopulaFamily::Gumbel, 4.0, margins::Gaussian{0, 1}, margins::Gaussian{0, 1}},
        {copula::CopulaFamily::EFGM, 0.7, margins::Cauchy{2, 0.5}, margins::Gaussian{0, 1}},
        {copula::CopulaFamily::EFGM, -0.5, margins::Gaussian{0, 2}, margins::StudentT{4, 1, 1}},
        {copula::CopulaFamily::Independent, 0.0, margins::Gaussian{0, 1}, margins::Gaussian{0, 1}},
        {copula::CopulaFamily::Clayton, 6.0, margins::StudentT{6, -1, 2}, margins::StudentT{3, 0, 1}},
        {copula::CopulaFamily::Gumbel, 1.4, margins::Cauchy{0, 2}, margins::Cauchy{1, 1}},
        {copula::CopulaFamily::Clayton, 1.5, margins::Gaussian{5, 3}, margins::Gaussian{-5, 0.1}},
    };

    std::uint64_t seed = 7000;
    for (const Case& c : cases) {
        const auto uv = copula::sample_copula(c.family, c.theta, 1200, seed++);
        std::vector<double> x;
        std::vector<double> y;
        for (const auto& [u, v] : uv) {
            x.push_back(margins::quantile(c.m1, u));
            y.push_back(margins::quantile(c.m2, v));
        }
        const copula::JointFit ifm =
            copula::fit_joint(x, y, mfams, cfams, {copula::FitMethod::IFM});
        const copula::JointFit full =
            copula::fit_joint(x, y, mfams, cfams, {copula::FitMethod::FullMLE});
        check.expect(full.copula.family == ifm.copula.family,
                     "family selection changed between IFM and full MLE");
        check.expect(full.total_loglik >= ifm.total_loglik - 1e-6,
                     "full MLE loglik " + format_double(full.total_loglik) + " below IFM " +
                         format_double(ifm.total_loglik));
    }
    return check;
}

// ---------------------------------------------------------------------
// Criterion 6: decision rule vs straight-line reimplementation.
// ---------------------------------------------------------------------
Check criterion_decision_oracle() {
    Check check;
    Rng rng(60606);
    for (int trial = 0; trial < 10000; ++trial) {
        const double h12 = rng.uniform01();
        const double h21 = rng.uniform01();
        const double eps = 0.001 + 0.497 * rng.uniform01();

        const bool asset1 = (h12 < eps) && (h21 > 1.0 - eps);
        const bool asset2 = (h12 > 1.0 - eps) && (h21 < eps);
        check.expect(!(asset1 && asset2), "both verdicts fired for eps < 0.5");

        signals::Verdict expected = signals::Verdict::NoSignal;
        if (asset1) expected = signals::Verdict::Asset1Underpriced;
        if (asset2) expected = signals::Verdict::Asset2Underpriced;
        check.expect(signals::evaluate_signal(h12, h21, eps) == expected,
                     "evaluate_signal disagrees with the reimplementation");
    }
    return check;
}

// ---------------------------------------------------------------------
// Criterion 7: monotone invariance of the empirical-rank pipeline.
// ---------------------------------------------------------------------
Check criterion_monotone_invariance() {
    Check check;
    const std::vector<margins::MarginalFamily> mfams{margins::MarginalFamily::Gaussian,
                                                     margins::MarginalFamily::StudentT,
                                                     margins::MarginalFamily::Cauchy};
    const std::vector<copula::CopulaFamily> cfams{
        copula::CopulaFamily::Independent, copula::CopulaFamily::Clayton,
        copula::CopulaFamily::Gumbel, copula::CopulaFamily::EFGM};
    struct Case {
        copula::CopulaFamily family;
        double theta;
    };
    const std::vector<Case> cases{{copula::CopulaFamily::Clayton, 2.0},
                                  {copula::CopulaFamily::Clayton, 6.0},
                                  {copula::CopulaFamily::Gumbel, 1.8},
                                  {copula::CopulaFamily::EFGM, 0.6},
                                  {copula::CopulaFamily::Independent, 0.0}};
    std::uint64_t seed = 12000;
    for (const Case& c : cases) {
        const auto uv = copula::sample_copula(c.family, c.theta, 900, seed++);
        std::vector<double> x;
        std::vector<double> y;
        for (const auto& [u, v] : uv) {
            x.push_back(num::normal_quantile(u));
            y.push_back(num::normal_quantile(v));
        }
        std::vector<double> ex(x.size());
        std::vector<double> ey(y.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            ex[i] = std::exp(x[i]);
            ey[i] = std::exp(y[i]);
        }
        const copula::FitOptions opts{copula::FitMethod::IFM, copula::PitMode::Empirical};
        const copula::JointFit raw = copula::fit_joint(x, y, mfams, cfams, opts);
        const copula::JointFit exp_fit = copula::fit_joint(ex, ey, mfams, cfams, opts);
        check.expect(raw.copula.family == exp_fit.copula.family,
                     "family selection is not rank-invariant");
        check.expect(raw.copula.theta == exp_fit.copula.theta,
                     "theta is not bit-identical under exp transform");
    }
    return check;
}

// ---------------------------------------------------------------------
// Criterion 8: Engle-Granger power and size, 100 seeds each, n=500.
// ---------------------------------------------------------------------
Check criterion_engle_granger() {
    Check check;
    int power_hits = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Rng rng(seed);
        std::vector<double> x(500);
        std::vector<double> y(500);
        double level = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            level += 0.02 * rng.normal();
            x[i] = level;
            y[i] = 2.0 * level + 0.002 * rng.normal();
        }
        if (pairs::engle_granger(x, y, 1).cointegrated) ++power_hits;
    }
    check.expect(power_hits >= 90, "cointegrated pairs flagged only " +
                                       std::to_string(power_hits) + "/100 times");

    int size_hits = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Rng rng(seed + 500);
        std::vector<double> x(500);
        std::vector<double> y(500);
        double lx = 0.0;
        double ly = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            lx += 0.02 * rng.normal();
            ly += 0.02 * rng.normal();
            x[i] = lx;
            y[i] = ly;
        }
        if (pairs::engle_granger(x, y, 1).cointegrated) ++size_hits;
    }
    check.expect(size_hits <= 15, "independent walks flagged " + std::to_string(size_hits) +
                                      "/100 times (max 15)");
    return check;
}

// ---------------------------------------------------------------------
// Criterion 9: pitfall demo contracts via the CLI with default settings.
// ---------------------------------------------------------------------
Check criterion_pitfall_demo() {
    Check check;
    const CommandResult result = run_cli("demo-pitfall");
    check.expect(result.exit_code == 0,
                 "demo-pitfall exited with " + std::to_string(result.exit_code));
    if (result.exit_code != 0) return check;

    std::vector<double> cx;
    std::vector<double> cy;
    std::vector<double> gx;
    std::vector<double> gy;
    std::stringstream stream(result.out);
    std::string line;
    std::getline(stream, line);
    check.expect(line == "model,x,y", "unexpected demo CSV header: " + line);
    while (std::getline(stream, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const std::string model = line.substr(0, c1);
        const double x = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const double y = std::stod(line.substr(c2 + 1));
        if (model == "clayton") {
            cx.push_back(x);
            cy.push_back(y);
        } else if (model == "gumbel") {
            gx.push_back(x);
            gy.push_back(y);
        }
    }
    check.expect(cx.size() == 1000 && gx.size() == 1000,
                 "expected 1000 samples per model, got " + std::to_string(cx.size()) + "/" +
                     std::to_string(gx.size()));
    if (!check.pass) return check;

    const auto normal_cdf = [](double z) { return num::normal_cdf(z); };
    check.expect(oracles::ks_passes(cx, normal_cdf, 0.01), "clayton x margin fails KS at 0.01");
    check.expect(oracles::ks_passes(cy, normal_cdf, 0.01), "clayton y margin fails KS at 0.01");
    check.expect(oracles::ks_passes(gx, normal_cdf, 0.01), "gumbel x margin fails KS at 0.01");
    check.expect(oracles::ks_passes(gy, normal_cdf, 0.01), "gumbel y margin fails KS at 0.01");

    const double rho_c = oracles::pearson(cx, cy);
    const double rho_g = oracles::pearson(gx, gy);
    check.expect(std::fabs(rho_c - rho_g) < 0.02,
                 "correlations differ by " + format_double(std::fabs(rho_c - rho_g)));

    // Lower-decile co-occurrence under the common N(0,1) margins.
    const double q10 = num::normal_quantile(0.1);
    std::size_t clayton_tail = 0;
    std::size_t gumbel_tail = 0;
    for (std::size_t i = 0; i < cx.size(); ++i) {
        if (cx[i] < q10 && cy[i] < q10) ++clayton_tail;
    }
    for (std::size_t i = 0; i < gx.size(); ++i) {
        if (gx[i] < q10 && gy[i] < q10) ++gumbel_tail;
    }
    const double hi = static_cast<double>(std::max(clayton_tail, gumbel_tail));
    const double lo = static_cast<double>(std::max<std::size_t>(
        std::min(clayton_tail, gumbel_tail), 1));
    check.expect(hi / lo >= 2.0 && hi > 0,
                 "tail co-occurrence counts " + std::to_string(clayton_tail) + " vs " +
                     std::to_string(gumbel_tail) + " differ by less than 2x");
    return check;
}

// ---------------------------------------------------------------------
// Criterion 10: simulate -> fit -> signals is byte-identical across runs.
// ---------------------------------------------------------------------
Check criterion_determinism() {
    Check check;
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() /
        ("copsig_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::filesystem::path csv = dir / "sim.csv";

    const std::string sim_args = "simulate --n 400 --seed 4242";
    const CommandResult sim1 = run_cli(sim_args);
    const CommandResult sim2 = run_cli(sim_args);
    check.expect(sim1.exit_code == 0, "simulate failed");
    check.expect(sim1.out == sim2.out, "simulate output is not byte-identical");

    std::ofstream(csv) << sim1.out;

    const std::string fit_args = "fit --data " + csv.string() + " --base BASE A1 A2";
    const CommandResult fit1 = run_cli(fit_args);
    const CommandResult fit2 = run_cli(fit_args);
    check.expect(fit1.exit_code == 0, "fit failed");
    check.expect(fit1.out == fit2.out, "fit output is not byte-identical");

    const std::string sig_args = "signals --data " + csv.string() + " --base BASE A1 A2";
    const CommandResult sig1 = run_cli(sig_args);
    const CommandResult sig2 = run_cli(sig_args);
    check.expect(sig1.exit_code == 0, "signals failed");
    check.expect(sig1.out == sig2.out, "signals output is not byte-identical");

    std::filesystem::remove_all(dir);
    return check;
}

struct Criterion {
    int id;
    std::string name;
    std::function<Check()> run;
    double budget_seconds; // 0 = unbounded
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "copula axiom suite", criterion_axioms, 10.0},
        {2, "derivative consistency", criterion_derivatives, 10.0},
        {3, "estimator recovery", criterion_recovery, 60.0},
        {4, "marginal selection by AIC", criterion_marginal_selection, 60.0},
        {5, "full-MLE dominance", criterion_full_mle_dominance, 0.0},
        {6, "decision-rule oracle", criterion_decision_oracle, 0.0},
        {7, "monotone invariance", criterion_monotone_invariance, 0.0},
        {8, "Engle-Granger power/size", criterion_engle_granger, 120.0},
        {9, "pitfall demo contracts", criterion_pitfall_demo, 0.0},
        {10, "end-to-end determinism", criterion_determinism, 0.0},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Check check;
        try {
            check = criterion.run();
        } catch (const std::exception& e) {
            check.fail(std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.budget_seconds > 0.0 && elapsed > criterion.budget_seconds) {
            check.fail("runtime " + format_double(elapsed) + "s over the " +
                       format_double(criterion.budget_seconds) + "s budget");
        }

        std::ostringstream line;
        line << (check.pass ? "PASS" : "FAIL") << "  criterion " << criterion.id << " ("
             << format_double(elapsed) << "s): " << criterion.name;
        if (!check.pass) line << " -- " << check.detail;
        std::cout << line.str() << "\n";
        if (!check.pass) ++failures;
    }
    return failures;
}
