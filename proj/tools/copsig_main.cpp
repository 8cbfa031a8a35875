// copsig_main.cpp
// Command-line front end for the copsig shared library. Machine-readable
// JSON goes to stdout, human-readable summaries to stderr. Exit codes:
// 0 success, 2 configuration error, 3 data error, 4 numeric failure.

#include "copsig/copsig.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;
constexpr int kExitNumericError = 4;

int exit_code_for(copsig_status status) {
    switch (status) {
        case COPSIG_OK:
            return kExitOk;
        case COPSIG_ERR_INVALID_ARGUMENT:
        case COPSIG_ERR_OUT_OF_RANGE:
        case COPSIG_ERR_EPSILON_OUT_OF_RANGE:
        case COPSIG_ERR_THETA_OUT_OF_DOMAIN:
            return kExitConfigError;
        case COPSIG_ERR_MISSING_SYMBOL:
        case COPSIG_ERR_MALFORMED_ROW:
        case COPSIG_ERR_NON_POSITIVE_PRICE:
        case COPSIG_ERR_DUPLICATE_TIMESTAMP:
        case COPSIG_ERR_TOO_SHORT:
        case COPSIG_ERR_INSUFFICIENT_OVERLAP:
        case COPSIG_ERR_DEGENERATE_REGRESSOR:
        case COPSIG_ERR_DEGENERATE_SAMPLE:
        case COPSIG_ERR_TOO_FEW_SAMPLES:
        case COPSIG_ERR_LENGTH_MISMATCH:
        case COPSIG_ERR_BOUNDARY_INPUT:
        case COPSIG_ERR_IO:
            return kExitDataError;
        case COPSIG_ERR_NON_CONVERGENCE:
        case COPSIG_ERR_ALL_FITS_FAILED:
        case COPSIG_ERR_NUMERIC_FAILURE:
        case COPSIG_ERR_INTERNAL:
            return kExitNumericError;
    }
    return kExitNumericError;
}

// Bail out through this on any failing library call.
struct CliError {
    int exit_code;
    std::string message;
};

void check(copsig_status status) {
    if (status == COPSIG_OK) return;
    std::ostringstream msg;
    msg << "error (" << copsig_status_name(status) << "): " << copsig_last_error();
    throw CliError{exit_code_for(status), msg.str()};
}

[[noreturn]] void config_error(const std::string& message) {
    throw CliError{kExitConfigError, "error (config): " + message};
}

struct ConfigDeleter {
    void operator()(copsig_config* p) const { copsig_config_free(p); }
};
struct DatasetDeleter {
    void operator()(copsig_dataset* p) const { copsig_dataset_free(p); }
};
struct ScanDeleter {
    void operator()(copsig_pair_scan* p) const { copsig_pair_scan_free(p); }
};
struct FitDeleter {
    void operator()(copsig_pair_fit* p) const { copsig_pair_fit_free(p); }
};
struct SignalsDeleter {
    void operator()(copsig_signal_list* p) const { copsig_signal_list_free(p); }
};

using ConfigPtr = std::unique_ptr<copsig_config, ConfigDeleter>;
using DatasetPtr = std::unique_ptr<copsig_dataset, DatasetDeleter>;
using ScanPtr = std::unique_ptr<copsig_pair_scan, ScanDeleter>;
using FitPtr = std::unique_ptr<copsig_pair_fit, FitDeleter>;
using SignalsPtr = std::unique_ptr<copsig_signal_list, SignalsDeleter>;

std::string take_string(char* text) {
    std::string out = text ? text : "";
    copsig_string_free(text);
    return out;
}

// Options shared across subcommands; only values the user actually passed
// override the config file.
struct CommonFlags {
    std::string config_path;
    std::string data_path;
    std::string base_symbol;
    double epsilon = 0.0;
    std::string method;
    std::string spread_on;
    std::string pit;
    std::uint64_t seed = 0;
    std::string marginals;
    std::string copulas;
    int eg_lags = 0;
    int top_k = 0;

    CLI::Option* opt_data = nullptr;
    CLI::Option* opt_base = nullptr;
    CLI::Option* opt_epsilon = nullptr;
    CLI::Option* opt_method = nullptr;
    CLI::Option* opt_spread_on = nullptr;
    CLI::Option* opt_pit = nullptr;
    CLI::Option* opt_seed = nullptr;
    CLI::Option* opt_marginals = nullptr;
    CLI::Option* opt_copulas = nullptr;
    CLI::Option* opt_eg_lags = nullptr;
    CLI::Option* opt_top_k = nullptr;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "Flat key = value configuration file");
    flags.opt_data = cmd->add_option("--data", flags.data_path, "Input price CSV");
    flags.opt_base = cmd->add_option("--base", flags.base_symbol, "Base asset symbol");
    flags.opt_epsilon =
        cmd->add_option("--epsilon", flags.epsilon, "Decision threshold in (0, 0.5)");
    flags.opt_method =
        cmd->add_option("--method", flags.method, "Fit method: ifm or full-mle");
    flags.opt_spread_on = cmd->add_option("--spread-on", flags.spread_on,
                                          "Spread basis: returns or cumulative");
    flags.opt_pit = cmd->add_option("--pit", flags.pit, "PIT mode: parametric or empirical");
    flags.opt_seed = cmd->add_option("--seed", flags.seed, "Random seed");
    flags.opt_marginals = cmd->add_option(
        "--marginals", flags.marginals, "Comma list of gaussian,student_t,cauchy");
    flags.opt_copulas = cmd->add_option(
        "--copulas", flags.copulas, "Comma list of independent,clayton,gumbel,efgm");
    flags.opt_eg_lags = cmd->add_option("--eg-lags", flags.eg_lags, "ADF lag order (>= 0)");
    flags.opt_top_k =
        cmd->add_option("--top-k", flags.top_k, "Pairs receiving the cointegration test");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

copsig_marginal_family marginal_from_name(const std::string& name) {
    if (name == "gaussian") return COPSIG_MARGINAL_GAUSSIAN;
    if (name == "student_t") return COPSIG_MARGINAL_STUDENT_T;
    if (name == "cauchy") return COPSIG_MARGINAL_CAUCHY;
    config_error("unknown marginal family '" + name + "'");
}

copsig_copula_family copula_from_name(const std::string& name) {
    if (name == "independent") return COPSIG_COPULA_INDEPENDENT;
    if (name == "clayton") return COPSIG_COPULA_CLAYTON;
    if (name == "gumbel") return COPSIG_COPULA_GUMBEL;
    if (name == "efgm") return COPSIG_COPULA_EFGM;
    config_error("unknown copula family '" + name + "'");
}

ConfigPtr build_config(const CommonFlags& flags) {
    copsig_config* raw = nullptr;
    if (!flags.config_path.empty()) {
        check(copsig_config_load(flags.config_path.c_str(), &raw));
    } else {
        check(copsig_config_create(&raw));
    }
    ConfigPtr config(raw);

    if (flags.opt_data && flags.opt_data->count() > 0) {
        check(copsig_config_set_data_path(config.get(), flags.data_path.c_str()));
    }
    if (flags.opt_base && flags.opt_base->count() > 0) {
        check(copsig_config_set_base_symbol(config.get(), flags.base_symbol.c_str()));
    }
    if (flags.opt_epsilon && flags.opt_epsilon->count() > 0) {
        check(copsig_config_set_epsilon(config.get(), flags.epsilon));
    }
    if (flags.opt_method && flags.opt_method->count() > 0) {
        if (flags.method == "ifm") {
            check(copsig_config_set_fit_method(config.get(), COPSIG_FIT_IFM));
        } else if (flags.method == "full-mle" || flags.method == "full_mle") {
            check(copsig_config_set_fit_method(config.get(), COPSIG_FIT_FULL_MLE));
        } else {
            config_error("unknown method '" + flags.method + "'");
        }
    }
    if (flags.opt_spread_on && flags.opt_spread_on->count() > 0) {
        if (flags.spread_on == "returns") {
            check(copsig_config_set_spread_basis(config.get(), COPSIG_SPREAD_ON_RETURNS));
        } else if (flags.spread_on == "cumulative") {
            check(copsig_config_set_spread_basis(config.get(), COPSIG_SPREAD_ON_CUMULATIVE));
        } else {
            config_error("unknown spread basis '" + flags.spread_on + "'");
        }
    }
    if (flags.opt_pit && flags.opt_pit->count() > 0) {
        if (flags.pit == "parametric") {
            check(copsig_config_set_pit_mode(config.get(), COPSIG_PIT_PARAMETRIC));
        } else if (flags.pit == "empirical") {
            check(copsig_config_set_pit_mode(config.get(), COPSIG_PIT_EMPIRICAL));
        } else {
            config_error("unknown pit mode '" + flags.pit + "'");
        }
    }
    if (flags.opt_seed && flags.opt_seed->count() > 0) {
        check(copsig_config_set_seed(config.get(), flags.seed));
    }
    if (flags.opt_marginals && flags.opt_marginals->count() > 0) {
        std::vector<copsig_marginal_family> families;
        for (const std::string& name : split_list(flags.marginals)) {
            families.push_back(marginal_from_name(name));
        }
        if (families.empty()) config_error("--marginals list is empty");
        check(copsig_config_set_marginals(config.get(), families.data(), families.size()));
    }
    if (flags.opt_copulas && flags.opt_copulas->count() > 0) {
        std::vector<copsig_copula_family> families;
        for (const std::string& name : split_list(flags.copulas)) {
            families.push_back(copula_from_name(name));
        }
        if (families.empty()) config_error("--copulas list is empty");
        check(copsig_config_set_copulas(config.get(), families.data(), families.size()));
    }
    if (flags.opt_eg_lags && flags.opt_eg_lags->count() > 0) {
        check(copsig_config_set_eg_lags(config.get(), flags.eg_lags));
    }
    if (flags.opt_top_k && flags.opt_top_k->count() > 0) {
        check(copsig_config_set_top_k(config.get(), flags.top_k));
    }
    return config;
}

DatasetPtr load_dataset(const copsig_config* config) {
    const std::string path = copsig_config_data_path(config);
    if (path.empty()) config_error("no data file given (--data or config key 'data')");
    copsig_dataset* raw = nullptr;
    check(copsig_dataset_load(path.c_str(), &raw));
    return DatasetPtr(raw);
}

void require_base(const copsig_config* config) {
    if (std::string(copsig_config_base_symbol(config)).empty()) {
        config_error("no base symbol given (--base or config key 'base')");
    }
}

ordered_json marginal_report_json(const copsig_marginal_report& report) {
    ordered_json params;
    switch (report.params.family) {
        case COPSIG_MARGINAL_GAUSSIAN:
            params = {{"mu", report.params.p1}, {"sigma", report.params.p2}};
            break;
        case COPSIG_MARGINAL_STUDENT_T:
            params = {{"nu", report.params.p1},
                      {"loc", report.params.p2},
                      {"scale", report.params.p3}};
            break;
        case COPSIG_MARGINAL_CAUCHY:
            params = {{"x0", report.params.p1}, {"gamma", report.params.p2}};
            break;
    }
    return ordered_json{{"family", copsig_marginal_family_name(report.params.family)},
                        {"params", params},
                        {"loglik", report.loglik},
                        {"aic", report.aic}};
}

int cmd_select_pairs(const CommonFlags& flags) {
    ConfigPtr config = build_config(flags);
    require_base(config.get());
    DatasetPtr dataset = load_dataset(config.get());

    copsig_pair_scan* raw = nullptr;
    check(copsig_scan_pairs(dataset.get(), config.get(), &raw));
    ScanPtr scan(raw);

    ordered_json out = ordered_json::array();
    const size_t count = copsig_pair_scan_count(scan.get());
    for (size_t i = 0; i < count; ++i) {
        copsig_pair_score score{};
        check(copsig_pair_scan_at(scan.get(), i, &score));
        ordered_json entry{{"symbol_a", score.symbol_a},
                           {"symbol_b", score.symbol_b},
                           {"correlation", score.correlation}};
        if (score.has_eg_statistic) {
            entry["eg_statistic"] = score.eg_statistic;
        } else {
            entry["eg_statistic"] = nullptr;
        }
        entry["cointegrated"] = score.cointegrated != 0;
        out.push_back(entry);
    }
    std::cout << out.dump(2) << "\n";

    std::cerr << "ranked " << count << " pairs";
    if (count > 0) {
        copsig_pair_score top{};
        check(copsig_pair_scan_at(scan.get(), 0, &top));
        std::cerr << "; top " << top.symbol_a << "-" << top.symbol_b << " correlation "
                  << top.correlation << (top.cointegrated ? " (cointegrated)" : "");
    }
    std::cerr << "\n";
    return kExitOk;
}

FitPtr fit_pair(const copsig_config* config, const copsig_dataset* dataset,
                const std::string& symbol_1, const std::string& symbol_2) {
    copsig_pair_fit* raw = nullptr;
    check(copsig_analyze_pair(dataset, config, symbol_1.c_str(), symbol_2.c_str(), &raw));
    return FitPtr(raw);
}

ordered_json fit_report_json(const copsig_config* config, const copsig_pair_fit* fit,
                             const std::string& symbol_1, const std::string& symbol_2) {
    double beta_1 = 0.0;
    double beta_2 = 0.0;
    check(copsig_pair_fit_beta(fit, 1, &beta_1));
    check(copsig_pair_fit_beta(fit, 2, &beta_2));
    copsig_marginal_report m1{};
    copsig_marginal_report m2{};
    check(copsig_pair_fit_marginal(fit, 1, &m1));
    check(copsig_pair_fit_marginal(fit, 2, &m2));
    copsig_copula_report cop{};
    check(copsig_pair_fit_copula(fit, &cop));
    double total_loglik = 0.0;
    check(copsig_pair_fit_total_loglik(fit, &total_loglik));
    copsig_fit_method method = COPSIG_FIT_IFM;
    check(copsig_pair_fit_method(fit, &method));

    ordered_json copula{{"family", copsig_copula_family_name(cop.family)}};
    if (cop.family == COPSIG_COPULA_INDEPENDENT) {
        copula["theta"] = nullptr;
    } else {
        copula["theta"] = cop.theta;
    }
    copula["loglik"] = cop.loglik;

    return ordered_json{{"base", copsig_config_base_symbol(config)},
                        {"symbol_1", symbol_1},
                        {"symbol_2", symbol_2},
                        {"beta_1", beta_1},
                        {"beta_2", beta_2},
                        {"marginal_1", marginal_report_json(m1)},
                        {"marginal_2", marginal_report_json(m2)},
                        {"copula", copula},
                        {"method", copsig_fit_method_name(method)},
                        {"total_loglik", total_loglik},
                        {"n", cop.n}};
}

int cmd_fit(const CommonFlags& flags, const std::vector<std::string>& symbols) {
    if (symbols.size() != 2) config_error("fit needs exactly 2 symbols");
    ConfigPtr config = build_config(flags);
    require_base(config.get());
    DatasetPtr dataset = load_dataset(config.get());
    FitPtr fit = fit_pair(config.get(), dataset.get(), symbols[0], symbols[1]);

    const ordered_json report = fit_report_json(config.get(), fit.get(), symbols[0], symbols[1]);
    std::cout << report.dump(2) << "\n";

    std::cerr << "fit " << symbols[0] << "/" << symbols[1] << " vs "
              << copsig_config_base_symbol(config.get()) << ": marginals "
              << report["marginal_1"]["family"].get<std::string>() << "/"
              << report["marginal_2"]["family"].get<std::string>() << ", copula "
              << report["copula"]["family"].get<std::string>() << ", method "
              << report["method"].get<std::string>() << ", total loglik "
              << report["total_loglik"].get<double>() << "\n";
    return kExitOk;
}

int cmd_signals(const CommonFlags& flags, const std::vector<std::string>& symbols) {
    if (symbols.size() != 2) config_error("signals needs exactly 2 symbols");
    ConfigPtr config = build_config(flags);
    require_base(config.get());
    DatasetPtr dataset = load_dataset(config.get());
    FitPtr fit = fit_pair(config.get(), dataset.get(), symbols[0], symbols[1]);

    copsig_signal_list* raw = nullptr;
    check(copsig_compute_signals(fit.get(), copsig_config_epsilon(config.get()), &raw));
    SignalsPtr list(raw);

    size_t counts[3] = {0, 0, 0};
    const size_t count = copsig_signal_list_count(list.get());
    for (size_t i = 0; i < count; ++i) {
        copsig_signal sig{};
        check(copsig_signal_list_at(list.get(), i, &sig));
        const ordered_json line{{"ts", sig.timestamp}, {"u", sig.u},     {"v", sig.v},
                                {"h12", sig.h12},      {"h21", sig.h21},
                                {"verdict", copsig_verdict_name(sig.verdict)}};
        std::cout << line.dump() << "\n";
        counts[static_cast<int>(sig.verdict)] += 1;
    }

    std::cerr << "signals: " << counts[0] << " no_signal, " << counts[1]
              << " asset1_underpriced, " << counts[2] << " asset2_underpriced (n=" << count
              << ", epsilon=" << copsig_config_epsilon(config.get()) << ")\n";
    return kExitOk;
}

copsig_marginal_params parse_margin_spec(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.empty()) config_error("empty marginal spec");

    const auto to_double = [&](const std::string& s) {
        try {
            size_t used = 0;
            const double value = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return value;
        } catch (const std::exception&) {
            config_error("bad number '" + s + "' in marginal spec '" + text + "'");
        }
    };

    copsig_marginal_params params{};
    params.family = marginal_from_name(parts[0]);
    const size_t expected = (params.family == COPSIG_MARGINAL_STUDENT_T) ? 3 : 2;
    if (parts.size() != expected + 1) {
        config_error("marginal spec '" + text + "' needs " + std::to_string(expected) +
                     " parameters (family:p1:...)");
    }
    params.p1 = to_double(parts[1]);
    params.p2 = to_double(parts[2]);
    if (expected == 3) params.p3 = to_double(parts[3]);
    return params;
}

int cmd_simulate(const CommonFlags& flags, std::size_t n, const std::string& copula_name,
                 double theta, const std::string& margin1, const std::string& margin2,
                 double beta1, double beta2) {
    ConfigPtr config = build_config(flags);

    copsig_sim_spec spec{};
    check(copsig_sim_spec_default(&spec));
    spec.n = n;
    spec.seed = copsig_config_seed(config.get());
    spec.copula_family = copula_from_name(copula_name);
    spec.theta = theta;
    spec.margin1 = parse_margin_spec(margin1);
    spec.margin2 = parse_margin_spec(margin2);
    spec.beta1 = beta1;
    spec.beta2 = beta2;

    char* csv = nullptr;
    check(copsig_simulate_csv(&spec, &csv));
    std::cout << take_string(csv);

    std::cerr << "simulated " << n << " spread observations (copula " << copula_name
              << ", theta " << theta << ", seed " << spec.seed << ")\n";
    return kExitOk;
}

int cmd_demo_pitfall(const CommonFlags& flags, std::size_t n, double rho) {
    ConfigPtr config = build_config(flags);

    copsig_pitfall_report report{};
    char* csv = nullptr;
    check(copsig_demo_pitfall_csv(n, rho, copsig_config_seed(config.get()), &report, &csv));
    std::cout << take_string(csv);

    std::cerr << "pitfall demo: clayton theta " << report.theta_clayton << " (corr "
              << report.corr_clayton << "), gumbel theta " << report.theta_gumbel << " (corr "
              << report.corr_gumbel << ")\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Copula-based mispricing signals for hedged asset pairs"};
    app.require_subcommand(1);

    CommonFlags select_flags;
    CLI::App* select_cmd =
        app.add_subcommand("select-pairs", "Rank candidate pairs by correlation");
    add_common_flags(select_cmd, select_flags);

    CommonFlags fit_flags;
    std::vector<std::string> fit_symbols;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Fit marginals and copula for one pair");
    add_common_flags(fit_cmd, fit_flags);
    fit_cmd->add_option("symbols", fit_symbols, "The two leg symbols")->expected(0, 2);

    CommonFlags signal_flags;
    std::vector<std::string> signal_symbols;
    CLI::App* signals_cmd =
        app.add_subcommand("signals", "Emit per-timestamp mispricing verdicts");
    add_common_flags(signals_cmd, signal_flags);
    signals_cmd->add_option("symbols", signal_symbols, "The two leg symbols")->expected(0, 2);

    CommonFlags sim_flags;
    std::size_t sim_n = 1000;
    std::string sim_copula = "clayton";
    double sim_theta = 5.0;
    std::string sim_margin1 = "gaussian:0:0.01";
    std::string sim_margin2 = "gaussian:0:0.01";
    double sim_beta1 = 1.0;
    double sim_beta2 = 1.0;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic price CSV");
    add_common_flags(sim_cmd, sim_flags);
    sim_cmd->add_option("--n", sim_n, "Number of spread observations");
    sim_cmd->add_option("--copula", sim_copula, "Generating copula family");
    sim_cmd->add_option("--theta", sim_theta, "Copula parameter");
    sim_cmd->add_option("--margin1", sim_margin1, "Spread 1 marginal, family:p1:p2[:p3]");
    sim_cmd->add_option("--margin2", sim_margin2, "Spread 2 marginal, family:p1:p2[:p3]");
    sim_cmd->add_option("--beta1", sim_beta1, "Hedge coefficient of leg 1");
    sim_cmd->add_option("--beta2", sim_beta2, "Hedge coefficient of leg 2");

    CommonFlags demo_flags;
    std::size_t demo_n = 1000;
    double demo_rho = 0.5;
    CLI::App* demo_cmd = app.add_subcommand(
        "demo-pitfall", "Two copulas, equal margins and correlation, different tails");
    add_common_flags(demo_cmd, demo_flags);
    demo_cmd->add_option("--n", demo_n, "Samples per model");
    demo_cmd->add_option("--rho", demo_rho, "Target Pearson correlation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error (usage): " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        if (select_cmd->parsed()) return cmd_select_pairs(select_flags);
        if (fit_cmd->parsed()) return cmd_fit(fit_flags, fit_symbols);
        if (signals_cmd->parsed()) return cmd_signals(signal_flags, signal_symbols);
        if (sim_cmd->parsed()) {
            return cmd_simulate(sim_flags, sim_n, sim_copula, sim_theta, sim_margin1,
                                sim_margin2, sim_beta1, sim_beta2);
        }
        if (demo_cmd->parsed()) return cmd_demo_pitfall(demo_flags, demo_n, demo_rho);
    } catch (const CliError& e) {
        std::cerr << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error (internal): " << e.what() << "\n";
        return kExitNumericError;
    }
    return kExitConfigError;
}
