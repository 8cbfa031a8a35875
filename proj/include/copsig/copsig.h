/* copsig.h
 *
 * C interface to the copsig shared library: copula-based mispricing signals
 * for hedged pairs of financial assets.
 *
 * Conventions:
 *   - Functions returning copsig_status report COPSIG_OK (0) on success.
 *     On failure, copsig_last_error() returns a thread-local message with
 *     detail for the most recent failing call on this thread.
 *   - Objects created by *_create / *_load / copsig_analyze_pair / ... are
 *     opaque handles owned by the caller and released with the matching
 *     *_free function. Strings returned through char** out-parameters are
 *     released with copsig_string_free().
 *   - const char* values returned by accessors point into the handle they
 *     were read from and stay valid until that handle is freed or mutated.
 */

#ifndef COPSIG_H
#define COPSIG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(COPSIG_BUILD)
#define COPSIG_API __declspec(dllexport)
#else
#define COPSIG_API __declspec(dllimport)
#endif
#else
#define COPSIG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* ------------------------------------------------------------------ */
/* Status & errors                                                    */
/* ------------------------------------------------------------------ */

typedef enum copsig_status {
    COPSIG_OK = 0,
    COPSIG_ERR_INVALID_ARGUMENT = 1,
    COPSIG_ERR_MISSING_SYMBOL = 2,
    COPSIG_ERR_MALFORMED_ROW = 3,
    COPSIG_ERR_NON_POSITIVE_PRICE = 4,
    COPSIG_ERR_DUPLICATE_TIMESTAMP = 5,
    COPSIG_ERR_TOO_SHORT = 6,
    COPSIG_ERR_INSUFFICIENT_OVERLAP = 7,
    COPSIG_ERR_DEGENERATE_REGRESSOR = 8,
    COPSIG_ERR_DEGENERATE_SAMPLE = 9,
    COPSIG_ERR_TOO_FEW_SAMPLES = 10,
    COPSIG_ERR_NON_CONVERGENCE = 11,
    COPSIG_ERR_ALL_FITS_FAILED = 12,
    COPSIG_ERR_THETA_OUT_OF_DOMAIN = 13,
    COPSIG_ERR_BOUNDARY_INPUT = 14,
    COPSIG_ERR_OUT_OF_RANGE = 15,
    COPSIG_ERR_LENGTH_MISMATCH = 16,
    COPSIG_ERR_EPSILON_OUT_OF_RANGE = 17,
    COPSIG_ERR_NUMERIC_FAILURE = 18,
    COPSIG_ERR_IO = 19,
    COPSIG_ERR_INTERNAL = 20
} copsig_status;

/* Static name of a status code, e.g. "theta_out_of_domain". */
COPSIG_API const char* copsig_status_name(copsig_status status);

/* Thread-local detail message of the most recent failure on this thread;
 * empty string when the last call succeeded. */
COPSIG_API const char* copsig_last_error(void);

COPSIG_API const char* copsig_version(void);

/* ------------------------------------------------------------------ */
/* Enumerations                                                       */
/* ------------------------------------------------------------------ */

typedef enum copsig_marginal_family {
    COPSIG_MARGINAL_GAUSSIAN = 0,
    COPSIG_MARGINAL_STUDENT_T = 1,
    COPSIG_MARGINAL_CAUCHY = 2
} copsig_marginal_family;

typedef enum copsig_copula_family {
    COPSIG_COPULA_INDEPENDENT = 0,
    COPSIG_COPULA_CLAYTON = 1,
    COPSIG_COPULA_GUMBEL = 2,
    COPSIG_COPULA_EFGM = 3
} copsig_copula_family;

typedef enum copsig_fit_method {
    COPSIG_FIT_IFM = 0,
    COPSIG_FIT_FULL_MLE = 1
} copsig_fit_method;

typedef enum copsig_spread_basis {
    COPSIG_SPREAD_ON_RETURNS = 0,
    COPSIG_SPREAD_ON_CUMULATIVE = 1
} copsig_spread_basis;

typedef enum copsig_pit_mode {
    COPSIG_PIT_PARAMETRIC = 0,
    COPSIG_PIT_EMPIRICAL = 1
} copsig_pit_mode;

typedef enum copsig_verdict {
    COPSIG_VERDICT_NO_SIGNAL = 0,
    COPSIG_VERDICT_ASSET1_UNDERPRICED = 1,
    COPSIG_VERDICT_ASSET2_UNDERPRICED = 2
} copsig_verdict;

COPSIG_API const char* copsig_marginal_family_name(copsig_marginal_family family);
COPSIG_API const char* copsig_copula_family_name(copsig_copula_family family);
COPSIG_API const char* copsig_fit_method_name(copsig_fit_method method);
COPSIG_API const char* copsig_verdict_name(copsig_verdict verdict);

/* ------------------------------------------------------------------ */
/* Stateless numeric kernel                                           */
/* ------------------------------------------------------------------ */

/* C(u, v); u, v in [0, 1], theta inside the family domain. */
COPSIG_API copsig_status copsig_copula_cdf(copsig_copula_family family, double theta,
                                           double u, double v, double* out);

/* c(u, v) = d2C/dudv; u, v strictly inside (0, 1). */
COPSIG_API copsig_status copsig_copula_density(copsig_copula_family family, double theta,
                                               double u, double v, double* out);

/* h(u | v) = P[U <= u | V = v] = dC/dv; v strictly inside (0, 1). */
COPSIG_API copsig_status copsig_copula_h_u_given_v(copsig_copula_family family, double theta,
                                                   double u, double v, double* out);

/* h(v | u) = P[V <= v | U = u] = dC/du; u strictly inside (0, 1). */
COPSIG_API copsig_status copsig_copula_h_v_given_u(copsig_copula_family family, double theta,
                                                   double u, double v, double* out);

/* Strict epsilon threshold rules on the conditional probabilities:
 * asset 1 underpriced iff h12 < eps and h21 > 1 - eps; asset 2 underpriced
 * iff h12 > 1 - eps and h21 < eps; equality yields no signal. */
COPSIG_API copsig_status copsig_evaluate_signal(double h12, double h21, double epsilon,
                                                copsig_verdict* out);

/* Sample Pearson correlation of two equal-length series (n >= 3). */
COPSIG_API copsig_status copsig_pearson_correlation(const double* x, const double* y, size_t n,
                                                    double* out);

/* D_t = beta * (r_i[t] - r_f) - (r_j[t] - r_f); out must hold n values. */
COPSIG_API copsig_status copsig_divergence_metric(const double* r_i, const double* r_j, size_t n,
                                                  double beta, double r_f, double* out);

/* Two-step Engle-Granger cointegration test on level series (n >= 30 + lags).
 * The statistic is the ADF t-value of the residual mean-reversion
 * coefficient; cointegrated is 1 when it falls below the embedded 5%
 * critical value (-3.34). */
COPSIG_API copsig_status copsig_engle_granger(const double* x, const double* y, size_t n,
                                              int lags, double* statistic, int* cointegrated);

/* Marginal parameter slots by family:
 *   gaussian:  p1 = mu, p2 = sigma
 *   student_t: p1 = nu, p2 = loc, p3 = scale
 *   cauchy:    p1 = x0, p2 = gamma
 */
typedef struct copsig_marginal_params {
    copsig_marginal_family family;
    double p1;
    double p2;
    double p3;
} copsig_marginal_params;

COPSIG_API copsig_status copsig_marginal_pdf(const copsig_marginal_params* params, double x,
                                             double* out);
COPSIG_API copsig_status copsig_marginal_cdf(const copsig_marginal_params* params, double x,
                                             double* out);
/* Inverse CDF; p strictly inside (0, 1). */
COPSIG_API copsig_status copsig_marginal_quantile(const copsig_marginal_params* params, double p,
                                                  double* out);

/* ------------------------------------------------------------------ */
/* Run configuration                                                  */
/* ------------------------------------------------------------------ */

typedef struct copsig_config copsig_config;

/* Fresh configuration with library defaults (epsilon 0.05, all families,
 * IFM, returns basis, parametric PIT, eg_lags 1, top_k 10, seed 42). */
COPSIG_API copsig_status copsig_config_create(copsig_config** out);

/* Parses the flat `key = value` text format on top of defaults. */
COPSIG_API copsig_status copsig_config_parse(const char* text, copsig_config** out);
COPSIG_API copsig_status copsig_config_load(const char* path, copsig_config** out);
COPSIG_API void copsig_config_free(copsig_config* config);

/* Normalized text form; parsing it back reproduces the configuration. */
COPSIG_API copsig_status copsig_config_serialize(const copsig_config* config, char** out_text);

COPSIG_API copsig_status copsig_config_set_data_path(copsig_config* config, const char* path);
COPSIG_API copsig_status copsig_config_set_base_symbol(copsig_config* config, const char* symbol);
COPSIG_API copsig_status copsig_config_set_epsilon(copsig_config* config, double epsilon);
COPSIG_API copsig_status copsig_config_set_fit_method(copsig_config* config,
                                                      copsig_fit_method method);
COPSIG_API copsig_status copsig_config_set_spread_basis(copsig_config* config,
                                                        copsig_spread_basis basis);
COPSIG_API copsig_status copsig_config_set_pit_mode(copsig_config* config, copsig_pit_mode mode);
COPSIG_API copsig_status copsig_config_set_eg_lags(copsig_config* config, int lags);
COPSIG_API copsig_status copsig_config_set_top_k(copsig_config* config, int top_k);
COPSIG_API copsig_status copsig_config_set_seed(copsig_config* config, uint64_t seed);
COPSIG_API copsig_status copsig_config_set_marginals(copsig_config* config,
                                                     const copsig_marginal_family* families,
                                                     size_t count);
COPSIG_API copsig_status copsig_config_set_copulas(copsig_config* config,
                                                   const copsig_copula_family* families,
                                                   size_t count);

COPSIG_API const char* copsig_config_data_path(const copsig_config* config);
COPSIG_API const char* copsig_config_base_symbol(const copsig_config* config);
COPSIG_API double copsig_config_epsilon(const copsig_config* config);
COPSIG_API uint64_t copsig_config_seed(const copsig_config* config);

/* ------------------------------------------------------------------ */
/* Price data                                                         */
/* ------------------------------------------------------------------ */

typedef struct copsig_dataset copsig_dataset;

/* Loads a long-format CSV with header `timestamp,symbol,close`; timestamps
 * are integer epoch seconds, prices positive decimals, rows unique per
 * (timestamp, symbol). Every symbol needs at least two rows. */
COPSIG_API copsig_status copsig_dataset_load(const char* path, copsig_dataset** out);
COPSIG_API void copsig_dataset_free(copsig_dataset* dataset);

COPSIG_API size_t copsig_dataset_symbol_count(const copsig_dataset* dataset);
COPSIG_API const char* copsig_dataset_symbol(const copsig_dataset* dataset, size_t index);

/* ------------------------------------------------------------------ */
/* Pair screening                                                     */
/* ------------------------------------------------------------------ */

typedef struct copsig_pair_scan copsig_pair_scan;

typedef struct copsig_pair_score {
    const char* symbol_a;
    const char* symbol_b;
    double correlation;
    int has_eg_statistic; /* cointegration is evaluated for top-k pairs only */
    double eg_statistic;
    int cointegrated;
} copsig_pair_score;

/* Scores every unordered pair of non-base symbols by return correlation
 * (descending) and runs the Engle-Granger test on the top-k candidates. */
COPSIG_API copsig_status copsig_scan_pairs(const copsig_dataset* dataset,
                                           const copsig_config* config,
                                           copsig_pair_scan** out);
COPSIG_API void copsig_pair_scan_free(copsig_pair_scan* scan);
COPSIG_API size_t copsig_pair_scan_count(const copsig_pair_scan* scan);
COPSIG_API copsig_status copsig_pair_scan_at(const copsig_pair_scan* scan, size_t index,
                                             copsig_pair_score* out);

/* ------------------------------------------------------------------ */
/* Joint fit and signals                                              */
/* ------------------------------------------------------------------ */

typedef struct copsig_pair_fit copsig_pair_fit;

typedef struct copsig_marginal_report {
    copsig_marginal_params params;
    double loglik;
    double aic;
    size_t n;
} copsig_marginal_report;

typedef struct copsig_copula_report {
    copsig_copula_family family;
    double theta; /* 0 for the independent family */
    double loglik;
    size_t n;
} copsig_copula_report;

/* Full pipeline for one pair: hedge regression against the configured base
 * symbol, spread construction, marginal selection by AIC, copula selection
 * by AIC (IFM), optional joint refinement (full MLE). */
COPSIG_API copsig_status copsig_analyze_pair(const copsig_dataset* dataset,
                                             const copsig_config* config,
                                             const char* symbol_1, const char* symbol_2,
                                             copsig_pair_fit** out);
COPSIG_API void copsig_pair_fit_free(copsig_pair_fit* fit);

/* leg is 1 or 2. */
COPSIG_API copsig_status copsig_pair_fit_beta(const copsig_pair_fit* fit, int leg, double* out);
COPSIG_API copsig_status copsig_pair_fit_marginal(const copsig_pair_fit* fit, int leg,
                                                  copsig_marginal_report* out);
COPSIG_API copsig_status copsig_pair_fit_copula(const copsig_pair_fit* fit,
                                                copsig_copula_report* out);
COPSIG_API copsig_status copsig_pair_fit_total_loglik(const copsig_pair_fit* fit, double* out);
COPSIG_API copsig_status copsig_pair_fit_method(const copsig_pair_fit* fit,
                                                copsig_fit_method* out);

typedef struct copsig_signal {
    int64_t timestamp;
    double u;
    double v;
    double h12;
    double h21;
    copsig_verdict verdict;
} copsig_signal;

typedef struct copsig_signal_list copsig_signal_list;

/* Per-timestamp verdicts over the fitted pair's common timeline. */
COPSIG_API copsig_status copsig_compute_signals(const copsig_pair_fit* fit, double epsilon,
                                                copsig_signal_list** out);
COPSIG_API void copsig_signal_list_free(copsig_signal_list* list);
COPSIG_API size_t copsig_signal_list_count(const copsig_signal_list* list);
COPSIG_API copsig_status copsig_signal_list_at(const copsig_signal_list* list, size_t index,
                                               copsig_signal* out);

/* ------------------------------------------------------------------ */
/* Synthetic data                                                     */
/* ------------------------------------------------------------------ */

typedef struct copsig_sim_spec {
    size_t n; /* spread observations; the CSV carries n + 1 prices per symbol */
    uint64_t seed;
    copsig_copula_family copula_family;
    double theta;
    copsig_marginal_params margin1;
    copsig_marginal_params margin2;
    double beta1;
    double beta2;
    const char* base_symbol; /* NULL -> "BASE" */
    const char* symbol1;     /* NULL -> "A1" */
    const char* symbol2;     /* NULL -> "A2" */
} copsig_sim_spec;

/* n = 1000, seed = 42, Clayton theta = 5, Gaussian(0, 0.01) margins,
 * betas 1, symbols BASE/A1/A2. */
COPSIG_API copsig_status copsig_sim_spec_default(copsig_sim_spec* out);

/* Price CSV (long format) for base + two assets whose return-basis spread
 * pair follows the given joint model; deterministic in the seed. */
COPSIG_API copsig_status copsig_simulate_csv(const copsig_sim_spec* spec, char** out_csv);

typedef struct copsig_pitfall_report {
    double theta_clayton;
    double theta_gumbel;
    double corr_clayton;
    double corr_gumbel;
} copsig_pitfall_report;

/* Two scatter sets (CSV `model,x,y`) with standard Gaussian margins and
 * sample correlations matched to within 0.02 between a Clayton and a Gumbel
 * model; report may be NULL. */
COPSIG_API copsig_status copsig_demo_pitfall_csv(size_t n, double target_rho, uint64_t seed,
                                                 copsig_pitfall_report* report, char** out_csv);

COPSIG_API void copsig_string_free(char* text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* COPSIG_H */
