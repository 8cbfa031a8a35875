#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "copsig/errors.hpp"
#include "copsig/ingest.hpp"
#include "copsig/rng.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <unistd.h>

using namespace copsig;
using namespace copsig::ingest;

namespace {

struct TempCsv {
    std::filesystem::path path;

    explicit TempCsv(const std::string& contents) {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("copsig_ingest_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) +
                ".csv");
        std::ofstream out(path);
        out << contents;
    }
    ~TempCsv() { std::filesystem::remove(path); }
};

ReturnSeries make_series(const std::string& symbol,
                         const std::vector<std::pair<std::int64_t, double>>& points) {
    ReturnSeries s;
    s.symbol = symbol;
    for (const auto& [ts, v] : points) s.observations.push_back({ts, v});
    return s;
}

} // namespace

TEST_CASE("load_prices parses rows for the requested symbol only") {
    TempCsv csv("timestamp,symbol,close\n1,A,100.0\n2,A,110.0\n1,B,50.0\n2,B,51.0\n");
    const PriceSeries series = load_prices(csv.path.string(), "A");
    REQUIRE(series.observations.size() == 2);
    CHECK(series.observations[0].timestamp == 1);
    CHECK(series.observations[0].price == 100.0);
    CHECK(series.observations[1].price == 110.0);
}

TEST_CASE("load_prices error paths") {
    SUBCASE("missing symbol") {
        TempCsv csv("timestamp,symbol,close\n1,A,100.0\n2,A,110.0\n");
        CHECK_THROWS_WITH_AS(load_prices(csv.path.string(), "B"),
                             doctest::Contains("no rows for symbol"), Error);
        try {
            load_prices(csv.path.string(), "B");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MissingSymbol);
        }
    }
    SUBCASE("non-positive price carries the row number") {
        TempCsv csv("timestamp,symbol,close\n1,A,100.0\n2,A,-5.0\n3,A,101.0\n");
        try {
            load_prices(csv.path.string(), "A");
            FAIL("expected NonPositivePrice");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NonPositivePrice);
            CHECK(std::string(e.what()).find("row 3") != std::string::npos);
        }
    }
    SUBCASE("malformed timestamp") {
        TempCsv csv("timestamp,symbol,close\nnope,A,100.0\n2,A,100.0\n");
        try {
            load_prices(csv.path.string(), "A");
            FAIL("expected MalformedRow");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MalformedRow);
        }
    }
    SUBCASE("malformed price") {
        TempCsv csv("timestamp,symbol,close\n1,A,abc\n");
        CHECK_THROWS_AS(load_prices(csv.path.string(), "A"), Error);
    }
    SUBCASE("duplicate timestamp for one symbol") {
        TempCsv csv("timestamp,symbol,close\n1,A,100.0\n1,A,101.0\n2,A,102.0\n");
        try {
            load_prices(csv.path.string(), "A");
            FAIL("expected DuplicateTimestamp");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DuplicateTimestamp);
        }
    }
    SUBCASE("missing header") {
        TempCsv csv("1,A,100.0\n2,A,101.0\n");
        CHECK_THROWS_AS(load_prices(csv.path.string(), "A"), Error);
    }
    SUBCASE("missing file") {
        try {
            load_prices("/nonexistent/copsig.csv", "A");
            FAIL("expected Io");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Io);
        }
    }
    SUBCASE("single row for a symbol") {
        TempCsv csv("timestamp,symbol,close\n1,A,100.0\n");
        try {
            load_prices(csv.path.string(), "A");
            FAIL("expected TooShort");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::TooShort);
        }
    }
}

TEST_CASE("load_csv sorts unordered rows by timestamp") {
    TempCsv csv("timestamp,symbol,close\n3,A,103.0\n1,A,100.0\n2,A,101.0\n");
    const Dataset data = load_csv(csv.path.string());
    const PriceSeries& a = data.find("A");
    REQUIRE(a.observations.size() == 3);
    CHECK(a.observations[0].timestamp == 1);
    CHECK(a.observations[2].timestamp == 3);
}

TEST_CASE("compute_returns") {
    PriceSeries prices{"A", {{1, 100.0}, {2, 110.0}}};
    const ReturnSeries returns = compute_returns(prices);
    REQUIRE(returns.observations.size() == 1);
    CHECK(returns.observations[0].timestamp == 2);
    // ln(110/100), closed form.
    CHECK(returns.observations[0].value == doctest::Approx(0.09531017980432486).epsilon(1e-14));

    PriceSeries flat{"A", {{1, 100.0}, {2, 100.0}, {3, 100.0}}};
    const ReturnSeries zero = compute_returns(flat);
    REQUIRE(zero.observations.size() == 2);
    CHECK(zero.observations[0].value == 0.0);
    CHECK(zero.observations[1].value == 0.0);

    PriceSeries one{"A", {{1, 100.0}}};
    try {
        compute_returns(one);
        FAIL("expected TooShort");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooShort);
    }
}

TEST_CASE("returns round-trip: cumulative exponentiation reconstructs prices") {
    Rng rng(11);
    PriceSeries prices{"A", {}};
    double p = 123.0;
    for (int i = 0; i < 200; ++i) {
        prices.observations.push_back({i + 1, p});
        p *= std::exp(0.02 * rng.normal());
    }
    const ReturnSeries returns = compute_returns(prices);
    double reconstructed = prices.observations[0].price;
    for (std::size_t i = 0; i < returns.observations.size(); ++i) {
        reconstructed *= std::exp(returns.observations[i].value);
        const double truth = prices.observations[i + 1].price;
        CHECK(std::fabs(reconstructed - truth) / truth < 1e-12);
    }
}

TEST_CASE("ols_beta examples") {
    const auto base = make_series("B", {{1, 0.01}, {2, -0.03}, {3, 0.02}, {4, 0.005}});

    SUBCASE("self regression is 1") {
        CHECK(ols_beta(base, base) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("exact linear relation base = 2 asset") {
        auto asset = base;
        for (auto& p : asset.observations) p.value /= 2.0;
        CHECK(ols_beta(base, asset) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("orthogonal series give beta 0") {
        const auto b = make_series("B", {{1, 1.0}, {2, -1.0}, {3, 1.0}, {4, -1.0}});
        const auto a = make_series("A", {{1, 1.0}, {2, 1.0}, {3, -1.0}, {4, -1.0}});
        CHECK(ols_beta(b, a) == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("degenerate regressor") {
        const auto flat = make_series("A", {{1, 0.01}, {2, 0.01}, {3, 0.01}, {4, 0.01}});
        try {
            ols_beta(base, flat);
            FAIL("expected DegenerateRegressor");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DegenerateRegressor);
        }
    }
    SUBCASE("insufficient overlap") {
        const auto far = make_series("A", {{100, 0.01}, {200, 0.02}});
        try {
            ols_beta(base, far);
            FAIL("expected InsufficientOverlap");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::InsufficientOverlap);
        }
    }
}

TEST_CASE("build_spread examples") {
    SUBCASE("exact hedge zeroes the spread") {
        const auto base = make_series("B", {{1, 0.01}, {2, 0.02}});
        const SpreadSeries s = build_spread(base, base, 1.0);
        for (const auto& p : s.observations) CHECK(p.value == 0.0);
        CHECK(s.beta == 1.0);
    }
    SUBCASE("beta 0 returns the base") {
        const auto base = make_series("B", {{1, 0.01}, {2, 0.02}});
        const auto asset = make_series("A", {{1, 0.5}, {2, -0.5}});
        const SpreadSeries s = build_spread(base, asset, 0.0);
        CHECK(s.observations[0].value == 0.01);
        CHECK(s.observations[1].value == 0.02);
    }
    SUBCASE("direct arithmetic") {
        const auto base = make_series("B", {{1, 0.02}, {2, 0.01}});
        const auto asset = make_series("A", {{1, 0.01}, {2, 0.03}});
        const SpreadSeries s = build_spread(base, asset, 0.5);
        CHECK(s.observations[0].value == doctest::Approx(0.015).epsilon(1e-14));
        CHECK(s.observations[1].value == doctest::Approx(-0.005).epsilon(1e-14));
    }
    SUBCASE("empty intersection") {
        const auto base = make_series("B", {{1, 0.01}, {2, 0.02}});
        const auto asset = make_series("A", {{5, 0.01}, {6, 0.02}});
        try {
            build_spread(base, asset, 1.0);
            FAIL("expected InsufficientOverlap");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::InsufficientOverlap);
        }
    }
}

TEST_CASE("OLS orthogonality: spread is uncorrelated with the regressor") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        ReturnSeries base{"B", {}};
        ReturnSeries asset{"A", {}};
        for (int t = 0; t < 300; ++t) {
            const double a = 0.01 * rng.normal();
            const double b = 1.7 * a + 0.005 * rng.normal();
            base.observations.push_back({t, b});
            asset.observations.push_back({t, a});
        }
        const double beta = ols_beta(base, asset);
        const SpreadSeries spread = build_spread(base, asset, beta);

        double mean_s = 0.0;
        double mean_a = 0.0;
        const std::size_t n = spread.observations.size();
        for (std::size_t t = 0; t < n; ++t) {
            mean_s += spread.observations[t].value;
            mean_a += asset.observations[t].value;
        }
        mean_s /= static_cast<double>(n);
        mean_a /= static_cast<double>(n);
        double cov = 0.0;
        double scale = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            cov += (spread.observations[t].value - mean_s) *
                   (asset.observations[t].value - mean_a);
            scale += std::fabs(spread.observations[t].value - mean_s) *
                     std::fabs(asset.observations[t].value - mean_a);
        }
        CHECK(std::fabs(cov) <= 1e-10 * std::max(scale, 1e-30));
    }
}

TEST_CASE("timestamp alignment is symmetric") {
    Rng rng(33);
    ReturnSeries a{"A", {}};
    ReturnSeries b{"B", {}};
    for (int t = 0; t < 100; ++t) {
        if (rng.uniform01() < 0.7) a.observations.push_back({t, rng.normal()});
        if (rng.uniform01() < 0.7) b.observations.push_back({t, rng.normal()});
    }
    const SpreadSeries ab = build_spread(a, b, 0.3);
    const SpreadSeries ba = build_spread(b, a, 0.3);
    REQUIRE(ab.observations.size() == ba.observations.size());
    for (std::size_t i = 0; i < ab.observations.size(); ++i) {
        CHECK(ab.observations[i].timestamp == ba.observations[i].timestamp);
    }
}
