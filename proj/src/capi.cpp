// capi.cpp
// extern "C" surface of the shared library. Exceptions from the core are
// caught at this boundary and mapped to status codes; detail text is kept in
// a thread-local buffer for copsig_last_error().

#include "copsig/copsig.h"

#include "copsig/config.hpp"
#include "copsig/copula.hpp"
#include "copsig/errors.hpp"
#include "copsig/ingest.hpp"
#include "copsig/margins.hpp"
#include "copsig/pairs.hpp"
#include "copsig/pipeline.hpp"
#include "copsig/signals.hpp"
#include "copsig/simulate.hpp"

#include <cstring>
#include <exception>
#include <string>
#include <vector>

namespace {

thread_local std::string g_last_error;

copsig_status map_code(copsig::ErrorCode code) {
    using copsig::ErrorCode;
    switch (code) {
        case ErrorCode::Ok: return COPSIG_OK;
        case ErrorCode::InvalidArgument: return COPSIG_ERR_INVALID_ARGUMENT;
        case ErrorCode::MissingSymbol: return COPSIG_ERR_MISSING_SYMBOL;
        case ErrorCode::MalformedRow: return COPSIG_ERR_MALFORMED_ROW;
        case ErrorCode::NonPositivePrice: return COPSIG_ERR_NON_POSITIVE_PRICE;
        case ErrorCode::DuplicateTimestamp: return COPSIG_ERR_DUPLICATE_TIMESTAMP;
        case ErrorCode::TooShort: return COPSIG_ERR_TOO_SHORT;
        case ErrorCode::InsufficientOverlap: return COPSIG_ERR_INSUFFICIENT_OVERLAP;
        case ErrorCode::DegenerateRegressor: return COPSIG_ERR_DEGENERATE_REGRESSOR;
        case ErrorCode::DegenerateSample: return COPSIG_ERR_DEGENERATE_SAMPLE;
        case ErrorCode::TooFewSamples: return COPSIG_ERR_TOO_FEW_SAMPLES;
        case ErrorCode::NonConvergence: return COPSIG_ERR_NON_CONVERGENCE;
        case ErrorCode::AllFitsFailed: return COPSIG_ERR_ALL_FITS_FAILED;
        case ErrorCode::ThetaOutOfDomain: return COPSIG_ERR_THETA_OUT_OF_DOMAIN;
        case ErrorCode::BoundaryInput: return COPSIG_ERR_BOUNDARY_INPUT;
        case ErrorCode::OutOfRange: return COPSIG_ERR_OUT_OF_RANGE;
        case ErrorCode::LengthMismatch: return COPSIG_ERR_LENGTH_MISMATCH;
        case ErrorCode::EpsilonOutOfRange: return COPSIG_ERR_EPSILON_OUT_OF_RANGE;
        case ErrorCode::NumericFailure: return COPSIG_ERR_NUMERIC_FAILURE;
        case ErrorCode::Io: return COPSIG_ERR_IO;
    }
    return COPSIG_ERR_INTERNAL;
}

template <typename Fn>
copsig_status guard(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return COPSIG_OK;
    } catch (const copsig::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return COPSIG_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return COPSIG_ERR_INTERNAL;
    }
}

void check_ptr(const void* p, const char* what) {
    copsig::require(p != nullptr, copsig::ErrorCode::InvalidArgument,
                    std::string(what) + " must not be NULL");
}

copsig::margins::MarginalFamily to_cpp(copsig_marginal_family family) {
    copsig::require(family >= COPSIG_MARGINAL_GAUSSIAN && family <= COPSIG_MARGINAL_CAUCHY,
                    copsig::ErrorCode::InvalidArgument, "bad marginal family value");
    return static_cast<copsig::margins::MarginalFamily>(family);
}

copsig::copula::CopulaFamily to_cpp(copsig_copula_family family) {
    copsig::require(family >= COPSIG_COPULA_INDEPENDENT && family <= COPSIG_COPULA_EFGM,
                    copsig::ErrorCode::InvalidArgument, "bad copula family value");
    return static_cast<copsig::copula::CopulaFamily>(family);
}

copsig::margins::MarginalParams to_cpp(const copsig_marginal_params& p) {
    using namespace copsig::margins;
    switch (to_cpp(p.family)) {
        case MarginalFamily::Gaussian: return Gaussian{p.p1, p.p2};
        case MarginalFamily::StudentT: return StudentT{p.p1, p.p2, p.p3};
        case MarginalFamily::Cauchy: return Cauchy{p.p1, p.p2};
    }
    copsig::raise(copsig::ErrorCode::InvalidArgument, "bad marginal family value");
}

copsig_marginal_params to_c(const copsig::margins::MarginalParams& params) {
    using namespace copsig::margins;
    copsig_marginal_params out{};
    out.family = static_cast<copsig_marginal_family>(family_of(params));
    std::visit(
        [&out](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                out.p1 = p.mu;
                out.p2 = p.sigma;
            } else if constexpr (std::is_same_v<T, StudentT>) {
                out.p1 = p.nu;
                out.p2 = p.loc;
                out.p3 = p.scale;
            } else {
                out.p1 = p.x0;
                out.p2 = p.gamma;
            }
        },
        params);
    return out;
}

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

} // namespace

struct copsig_config {
    copsig::RunConfig cfg;
};

struct copsig_dataset {
    copsig::ingest::Dataset data;
};

struct copsig_pair_scan {
    std::vector<copsig::pairs::PairScore> scores;
};

struct copsig_pair_fit {
    copsig::PairAnalysis analysis;
};

struct copsig_signal_list {
    std::vector<copsig::signals::Signal> items;
};

extern "C" {

const char* copsig_status_name(copsig_status status) {
    switch (status) {
        case COPSIG_OK: return "ok";
        case COPSIG_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case COPSIG_ERR_MISSING_SYMBOL: return "missing_symbol";
        case COPSIG_ERR_MALFORMED_ROW: return "malformed_row";
        case COPSIG_ERR_NON_POSITIVE_PRICE: return "non_positive_price";
        case COPSIG_ERR_DUPLICATE_TIMESTAMP: return "duplicate_timestamp";
        case COPSIG_ERR_TOO_SHORT: return "too_short";
        case COPSIG_ERR_INSUFFICIENT_OVERLAP: return "insufficient_overlap";
        case COPSIG_ERR_DEGENERATE_REGRESSOR: return "degenerate_regressor";
        case COPSIG_ERR_DEGENERATE_SAMPLE: return "degenerate_sample";
        case COPSIG_ERR_TOO_FEW_SAMPLES: return "too_few_samples";
        case COPSIG_ERR_NON_CONVERGENCE: return "non_convergence";
        case COPSIG_ERR_ALL_FITS_FAILED: return "all_fits_failed";
        case COPSIG_ERR_THETA_OUT_OF_DOMAIN: return "theta_out_of_domain";
        case COPSIG_ERR_BOUNDARY_INPUT: return "boundary_input";
        case COPSIG_ERR_OUT_OF_RANGE: return "out_of_range";
        case COPSIG_ERR_LENGTH_MISMATCH: return "length_mismatch";
        case COPSIG_ERR_EPSILON_OUT_OF_RANGE: return "epsilon_out_of_range";
        case COPSIG_ERR_NUMERIC_FAILURE: return "numeric_failure";
        case COPSIG_ERR_IO: return "io";
        case COPSIG_ERR_INTERNAL: return "internal";
    }
    return "?";
}

const char* copsig_last_error(void) {
    return g_last_error.c_str();
}

const char* copsig_version(void) {
    return "0.1.0";
}

const char* copsig_marginal_family_name(copsig_marginal_family family) {
    return copsig::margins::family_name(static_cast<copsig::margins::MarginalFamily>(family));
}

const char* copsig_copula_family_name(copsig_copula_family family) {
    return copsig::copula::family_name(static_cast<copsig::copula::CopulaFamily>(family));
}

const char* copsig_fit_method_name(copsig_fit_method method) {
    return copsig::copula::fit_method_name(static_cast<copsig::copula::FitMethod>(method));
}

const char* copsig_verdict_name(copsig_verdict verdict) {
    return copsig::signals::verdict_name(static_cast<copsig::signals::Verdict>(verdict));
}

copsig_status copsig_copula_cdf(copsig_copula_family family, double theta, double u, double v,
                                double* out) {
    return guard([&] {
        check_ptr(out, "out");
        *out = copsig::copula::copula_cdf(to_cpp(family), theta, u, v);
    });
}

copsig_status copsig_copula_density(copsig_copula_family family, double theta, double u, double v,
                                    double* out) {
    return guard([&] {
        check_ptr(out, "out");
        *out = copsig::copula::copula_density(to_cpp(family), theta, u, v);
    });
}

copsig_status copsig_copula_h_u_given_v(copsig_copula_family family, double theta, double u,
                                        double v, double* out) {
    return guard([&] {
        check_ptr(out, "out");
        *out = copsig::copula::h_u_given_v(to_cpp(family), theta, u, v);
    });
}

copsig_status copsig_copula_h_v_given_u(copsig_copula_family family, double theta, double u,
                                        double v, double* out) {
    return guard([&] {
        check_ptr(out, "out");
        *out = copsig::copula::h_v_given_u(to_cpp(family), theta, u, v);
    });
}

copsig_status copsig_evaluate_signal(double h12, double h21, double epsilon,
                                     copsig_verdict* out) {
    return guard([&] {
        check_ptr(out, "out");
        *out = static_cast<copsig_verdict>(copsig::signals::evaluate_signal(h12, h21, epsilon));
    });
}

copsig_status copsig_pearson_correlation(const double* x, const double* y, size_t n,
                                         double* out) {
    return guard([&] {
        check_ptr(x, "x");
        check_ptr(y, "y");
        check_ptr(out, "out");
        *out = copsig::pairs::pearson_correlation({x, n}, {y, n});
    });
}

copsig_status copsig_divergence_metric(const double* r_i, const double* r_j, size_t n,
                                       double beta, double r_f, double* out) {
    return guard([&] {
        check_ptr(r_i, "r_i");
        check_ptr(r_j, "r_j");
        check_ptr(out, "out");
        const std::vector<double> d = copsig::pairs::divergence_metric({r_i, n}, {r_j, n},
                                                                       beta, r_f);
        std::memcpy(out, d.data(), n * sizeof(double));
    });
}

copsig_status copsig_engle_granger(const double* x, const double* y, size_t n, int lags,
                                   double* statistic, int* cointegrated) {
    return guard([&] {
        check_ptr(x, "x");
        check_ptr(y, "y");
        check_ptr(statistic, "statistic");
        check_ptr(cointegrated, "cointegrated");
        const copsig::pairs::EngleGrangerResult result =
            copsig::pairs::engle_granger({x, n}, {y, n}, lags);
        *statistic = result.eg_statistic;
        *cointegrated = result.cointegrated ? 1 : 0;
    });
}

copsig_status copsig_marginal_pdf(const copsig_marginal_params* params, double x, double* out) {
    return guard([&] {
        check_ptr(params, "params");
        check_ptr(out, "out");
        *out = copsig::margins::pdf(to_cpp(*params), x);
    });
}

copsig_status copsig_marginal_cdf(const copsig_marginal_params* params, double x, double* out) {
    return guard([&] {
        check_ptr(params, "params");
        check_ptr(out, "out");
        *out = copsig::margins::cdf(to_cpp(*params), x);
    });
}

copsig_status copsig_marginal_quantile(const copsig_marginal_params* params, double p,
                                       double* out) {
    return guard([&] {
        check_ptr(params, "params");
        check_ptr(out, "out");
        *out = copsig::margins::quantile(to_cpp(*params), p);
    });
}

copsig_status copsig_config_create(copsig_config** out) {
    return guard([&] {
        check_ptr(out, "out");
        *out = new copsig_config{};
    });
}

copsig_status copsig_config_parse(const char* text, copsig_config** out) {
    return guard([&] {
        check_ptr(text, "text");
        check_ptr(out, "out");
        *out = new copsig_config{copsig::parse_config_text(text)};
    });
}

copsig_status copsig_config_load(const char* path, copsig_config** out) {
    return guard([&] {
        check_ptr(path, "path");
        check_ptr(out, "out");
        *out = new copsig_config{copsig::load_config(path)};
    });
}

void copsig_config_free(copsig_config* config) {
    delete config;
}

copsig_status copsig_config_serialize(const copsig_config* config, char** out_text) {
    return guard([&] {
        check_ptr(config, "config");
        check_ptr(out_text, "out_text");
        *out_text = copy_string(copsig::serialize_config(config->cfg));
    });
}

copsig_status copsig_config_set_data_path(copsig_config* config, const char* path) {
    return guard([&] {
        check_ptr(config, "config");
        check_ptr(path, "path");
        config->cfg.data_path = path;
    });
}

copsig_status copsig_config_set_base_symbol(copsig_config* config, const char* symbol) {
    return guard([&] {
        check_ptr(config, "config");
        check_ptr(symbol, "symbol");
        config->cfg.base_symbol = symbol;
    });
}

copsig_status copsig_config_set_epsilon(copsig_config* config, double epsilon) {
    return guard([&] {
        check_ptr(config, "config");
        copsig::RunConfig candidate = config->cfg;
        candidate.epsilon = epsilon;
        copsig::validate_config(candidate);
        config->cfg = candidate;
    });
}

copsig_status copsig_config_set_fit_method(copsig_config* config, copsig_fit_method method) {
    return guard([&] {
        check_ptr(config, "config");
        copsig::require(method == COPSIG_FIT_IFM || method == COPSIG_FIT_FULL_MLE,
                        copsig::ErrorCode::InvalidArgument, "bad fit method value");
        config->cfg.fit_method = static_cast<copsig::copula::FitMethod>(method);
    });
}

copsig_status copsig_config_set_spread_basis(copsig_config* config, copsig_spread_basis basis) {
    return guard([&] {
        check_ptr(config, "config");
        copsig::require(basis == COPSIG_SPREAD_ON_RETURNS || basis == COPSIG_SPREAD_ON_CUMULATIVE,
                        copsig::ErrorCode::InvalidArgument, "bad spread basis value");
        config->cfg.spread_on = static_cast<copsig::SpreadBasis>(basis);
    });
}

copsig_status copsig_config_set_pit_mode(copsig_config* config, copsig_pit_mode mode) {
    return guard([&] {
        check_ptr(config, "config");
        copsig::require(mode == COPSIG_PIT_PARAMETRIC || mode == COPSIG_PIT_EMPIRICAL,
                        copsig::ErrorCode::InvalidArgument, "bad pit mode value");
        config->cfg.pit = static_cast<copsig::copula::PitMode>(mode);
    });
}

copsig_status copsig_config_set_eg_lags(copsig_config* config, int lags) {
    return guard([&] {
        check_ptr(config, "config");
        copsig::require(lags >= 0, copsig::ErrorCode::InvalidArgument, "eg_lags must be >= 0");
        config->cfg.eg_lags = lags;
    });
}

copsig_status copsig_config_set_top_k(copsig_config* config, int top_k) {
    return guard([&] {
        check_ptr(config, "config");
        copsig::require(top_k >= 1, copsig::ErrorCode::InvalidArgument, "top_k must be >= 1");
        config->cfg.top_k = top_k;
    });
}

copsig_status copsig_config_set_seed(copsig_config* config, uint64_t seed) {
    return guard([&] {
        check_ptr(config, "config");
        config->cfg.seed = seed;
    });
}

copsig_status copsig_config_set_marginals(copsig_config* config,
                                          const copsig_marginal_family* families, size_t count) {
    return guard([&] {
        check_ptr(config, "config");
        check_ptr(families, "families");
        copsig::require(count >= 1, copsig::ErrorCode::InvalidArgument,
                        "marginal family list is empty");
        std::vector<copsig::margins::MarginalFamily> parsed;
        parsed.reserve(count);
        for (size_t i = 0; i < count; ++i) parsed.push_back(to_cpp(families[i]));
        config->cfg.marginal_families = std::move(parsed);
    });
}

copsig_status copsig_config_set_copulas(copsig_config* config,
                                        const copsig_copula_family* families, size_t count) {
    return guard([&] {
        check_ptr(config, "config");
        check_ptr(families, "families");
        copsig::require(count >= 1, copsig::ErrorCode::InvalidArgument,
                        "copula family list is empty");
        std::vector<copsig::copula::CopulaFamily> parsed;
        parsed.reserve(count);
        for (size_t i = 0; i < count; ++i) parsed.push_back(to_cpp(families[i]));
        config->cfg.copula_families = std::move(parsed);
    });
}

const char* copsig_config_data_path(const copsig_config* config) {
    return config ? config->cfg.data_path.c_str() : "";
}

const char* copsig_config_base_symbol(const copsig_config* config) {
    return config ? config->cfg.base_symbol.c_str() : "";
}

double copsig_config_epsilon(const copsig_config* config) {
    return config ? config->cfg.epsilon : 0.0;
}

uint64_t copsig_config_seed(const copsig_config* config) {
    return config ? config->cfg.seed : 0;
}

copsig_status copsig_dataset_load(const char* path, copsig_dataset** out) {
    return guard([&] {
        check_ptr(path, "path");
        check_ptr(out, "out");
        *out = new copsig_dataset{copsig::ingest::load_csv(path)};
    });
}

void copsig_dataset_free(copsig_dataset* dataset) {
    delete dataset;
}

size_t copsig_dataset_symbol_count(const copsig_dataset* dataset) {
    return dataset ? dataset->data.series.size() : 0;
}

const char* copsig_dataset_symbol(const copsig_dataset* dataset, size_t index) {
    if (!dataset || index >= dataset->data.series.size()) return nullptr;
    return dataset->data.series[index].symbol.c_str();
}

copsig_status copsig_scan_pairs(const copsig_dataset* dataset, const copsig_config* config,
                                copsig_pair_scan** out) {
    return guard([&] {
        check_ptr(dataset, "dataset");
        check_ptr(config, "config");
        check_ptr(out, "out");
        *out = new copsig_pair_scan{copsig::scan_pairs(dataset->data, config->cfg)};
    });
}

void copsig_pair_scan_free(copsig_pair_scan* scan) {
    delete scan;
}

size_t copsig_pair_scan_count(const copsig_pair_scan* scan) {
    return scan ? scan->scores.size() : 0;
}

copsig_status copsig_pair_scan_at(const copsig_pair_scan* scan, size_t index,
                                  copsig_pair_score* out) {
    return guard([&] {
        check_ptr(scan, "scan");
        check_ptr(out, "out");
        copsig::require(index < scan->scores.size(), copsig::ErrorCode::OutOfRange,
                        "pair index out of range");
        const copsig::pairs::PairScore& score = scan->scores[index];
        out->symbol_a = score.symbol_a.c_str();
        out->symbol_b = score.symbol_b.c_str();
        out->correlation = score.correlation;
        out->has_eg_statistic = score.eg_statistic.has_value() ? 1 : 0;
        out->eg_statistic = score.eg_statistic.value_or(0.0);
        out->cointegrated = score.cointegrated ? 1 : 0;
    });
}

copsig_status copsig_analyze_pair(const copsig_dataset* dataset, const copsig_config* config,
                                  const char* symbol_1, const char* symbol_2,
                                  copsig_pair_fit** out) {
    return guard([&] {
        check_ptr(dataset, "dataset");
        check_ptr(config, "config");
        check_ptr(symbol_1, "symbol_1");
        check_ptr(symbol_2, "symbol_2");
        check_ptr(out, "out");
        *out = new copsig_pair_fit{
            copsig::analyze_pair(dataset->data, config->cfg, symbol_1, symbol_2)};
    });
}

void copsig_pair_fit_free(copsig_pair_fit* fit) {
    delete fit;
}

copsig_status copsig_pair_fit_beta(const copsig_pair_fit* fit, int leg, double* out) {
    return guard([&] {
        check_ptr(fit, "fit");
        check_ptr(out, "out");
        copsig::require(leg == 1 || leg == 2, copsig::ErrorCode::InvalidArgument,
                        "leg must be 1 or 2");
        *out = (leg == 1) ? fit->analysis.beta_1 : fit->analysis.beta_2;
    });
}

copsig_status copsig_pair_fit_marginal(const copsig_pair_fit* fit, int leg,
                                       copsig_marginal_report* out) {
    return guard([&] {
        check_ptr(fit, "fit");
        check_ptr(out, "out");
        copsig::require(leg == 1 || leg == 2, copsig::ErrorCode::InvalidArgument,
                        "leg must be 1 or 2");
        const copsig::margins::MarginalModel& model =
            (leg == 1) ? fit->analysis.fit.marginal1 : fit->analysis.fit.marginal2;
        out->params = to_c(model.params);
        out->loglik = model.loglik;
        out->aic = model.aic;
        out->n = model.n;
    });
}

copsig_status copsig_pair_fit_copula(const copsig_pair_fit* fit, copsig_copula_report* out) {
    return guard([&] {
        check_ptr(fit, "fit");
        check_ptr(out, "out");
        const copsig::copula::CopulaModel& model = fit->analysis.fit.copula;
        out->family = static_cast<copsig_copula_family>(model.family);
        out->theta = model.theta;
        out->loglik = model.loglik;
        out->n = model.n;
    });
}

copsig_status copsig_pair_fit_total_loglik(const copsig_pair_fit* fit, double* out) {
    return guard([&] {
        check_ptr(fit, "fit");
        check_ptr(out, "out");
        *out = fit->analysis.fit.total_loglik;
    });
}

copsig_status copsig_pair_fit_method(const copsig_pair_fit* fit, copsig_fit_method* out) {
    return guard([&] {
        check_ptr(fit, "fit");
        check_ptr(out, "out");
        *out = static_cast<copsig_fit_method>(fit->analysis.fit.method);
    });
}

copsig_status copsig_compute_signals(const copsig_pair_fit* fit, double epsilon,
                                     copsig_signal_list** out) {
    return guard([&] {
        check_ptr(fit, "fit");
        check_ptr(out, "out");
        *out = new copsig_signal_list{copsig::pair_signals(fit->analysis, epsilon)};
    });
}

void copsig_signal_list_free(copsig_signal_list* list) {
    delete list;
}

size_t copsig_signal_list_count(const copsig_signal_list* list) {
    return list ? list->items.size() : 0;
}

copsig_status copsig_signal_list_at(const copsig_signal_list* list, size_t index,
                                    copsig_signal* out) {
    return guard([&] {
        check_ptr(list, "list");
        check_ptr(out, "out");
        copsig::require(index < list->items.size(), copsig::ErrorCode::OutOfRange,
                        "signal index out of range");
        const copsig::signals::Signal& sig = list->items[index];
        out->timestamp = sig.timestamp;
        out->u = sig.u;
        out->v = sig.v;
        out->h12 = sig.h12;
        out->h21 = sig.h21;
        out->verdict = static_cast<copsig_verdict>(sig.verdict);
    });
}

copsig_status copsig_sim_spec_default(copsig_sim_spec* out) {
    return guard([&] {
        check_ptr(out, "out");
        const copsig::sim::SimSpec defaults;
        copsig_sim_spec spec{};
        spec.n = defaults.n;
        spec.seed = defaults.seed;
        spec.copula_family = static_cast<copsig_copula_family>(defaults.copula_family);
        spec.theta = defaults.theta;
        spec.margin1 = to_c(defaults.margin1);
        spec.margin2 = to_c(defaults.margin2);
        spec.beta1 = defaults.beta1;
        spec.beta2 = defaults.beta2;
        spec.base_symbol = nullptr;
        spec.symbol1 = nullptr;
        spec.symbol2 = nullptr;
        *out = spec;
    });
}

copsig_status copsig_simulate_csv(const copsig_sim_spec* spec, char** out_csv) {
    return guard([&] {
        check_ptr(spec, "spec");
        check_ptr(out_csv, "out_csv");
        copsig::sim::SimSpec cpp_spec;
        cpp_spec.n = spec->n;
        cpp_spec.seed = spec->seed;
        cpp_spec.copula_family = to_cpp(spec->copula_family);
        cpp_spec.theta = spec->theta;
        cpp_spec.margin1 = to_cpp(spec->margin1);
        cpp_spec.margin2 = to_cpp(spec->margin2);
        cpp_spec.beta1 = spec->beta1;
        cpp_spec.beta2 = spec->beta2;
        if (spec->base_symbol) cpp_spec.base_symbol = spec->base_symbol;
        if (spec->symbol1) cpp_spec.symbol1 = spec->symbol1;
        if (spec->symbol2) cpp_spec.symbol2 = spec->symbol2;
        *out_csv = copy_string(copsig::sim::simulate_csv(cpp_spec));
    });
}

copsig_status copsig_demo_pitfall_csv(size_t n, double target_rho, uint64_t seed,
                                      copsig_pitfall_report* report, char** out_csv) {
    return guard([&] {
        check_ptr(out_csv, "out_csv");
        const copsig::sim::PitfallDemo demo = copsig::sim::demo_pitfall(n, target_rho, seed);
        if (report) {
            report->theta_clayton = demo.theta_clayton;
            report->theta_gumbel = demo.theta_gumbel;
            report->corr_clayton = demo.corr_clayton;
            report->corr_gumbel = demo.corr_gumbel;
        }
        *out_csv = copy_string(copsig::sim::demo_pitfall_csv(demo));
    });
}

void copsig_string_free(char* text) {
    delete[] text;
}

} // extern "C"
