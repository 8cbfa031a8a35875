#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

const std::string kCli = COPSIG_CLI_PATH;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::filesystem::path temp_path(const std::string& stem) {
    static int counter = 0;
    return std::filesystem::temp_directory_path() /
           ("copsig_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" +
            stem);
}

RunResult run(const std::string& args) {
    const std::filesystem::path err_file = temp_path("stderr.txt");
    const std::string command = kCli + " " + args + " 2>" + err_file.string();
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);

    RunResult result;
    std::array<char, 4096> buffer{};
    size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.out.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

    std::ifstream err_in(err_file);
    std::stringstream err_text;
    err_text << err_in.rdbuf();
    result.err = err_text.str();
    std::filesystem::remove(err_file);
    return result;
}

std::filesystem::path write_file(const std::string& stem, const std::string& contents) {
    const std::filesystem::path path = temp_path(stem);
    std::ofstream out(path);
    out << contents;
    return path;
}

} // namespace

TEST_CASE("simulate: success, determinism and n=0 guard") {
    const RunResult a = run("simulate --n 64 --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.out.rfind("timestamp,symbol,close\n", 0) == 0);

    const RunResult b = run("simulate --n 64 --seed 7");
    CHECK(a.out == b.out); // byte-identical

    const RunResult c = run("simulate --n 64 --seed 8");
    CHECK(a.out != c.out);

    const RunResult bad = run("simulate --n 0");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("missing data path is a config error") {
    const RunResult r = run("select-pairs --base BASE");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("no data file") != std::string::npos);
}

TEST_CASE("select-pairs needs two non-base symbols") {
    const auto csv = write_file("single.csv", "timestamp,symbol,close\n1,A,1\n2,A,2\n");
    const RunResult r = run("select-pairs --data " + csv.string() + " --base BASE");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("need at least 2 non-base symbols") != std::string::npos);
    std::filesystem::remove(csv);
}

TEST_CASE("fit pipeline: report fields and error paths") {
    const RunResult sim = run("simulate --n 600 --seed 99");
    REQUIRE(sim.exit_code == 0);
    const auto csv = write_file("fit.csv", sim.out);

    const RunResult fit = run("fit --data " + csv.string() + " --base BASE A1 A2");
    REQUIRE(fit.exit_code == 0);
    const nlohmann::json report = nlohmann::json::parse(fit.out);
    CHECK(report["base"] == "BASE");
    CHECK(report["symbol_1"] == "A1");
    CHECK(report["symbol_2"] == "A2");
    CHECK(report.contains("beta_1"));
    CHECK(report.contains("beta_2"));
    CHECK(report["marginal_1"].contains("family"));
    CHECK(report["marginal_1"].contains("params"));
    CHECK(report["marginal_1"].contains("aic"));
    CHECK(report["copula"].contains("family"));
    CHECK(report["copula"].contains("theta"));
    CHECK(report["copula"].contains("loglik"));
    CHECK(report["method"] == "ifm");
    CHECK(report.contains("total_loglik"));

    const RunResult absent = run("fit --data " + csv.string() + " --base BASE A1 NOPE");
    CHECK(absent.exit_code == 3);

    const RunResult one_symbol = run("fit --data " + csv.string() + " --base BASE A1");
    CHECK(one_symbol.exit_code == 2);

    // Restricting the copula family list forces that family.
    const RunResult forced =
        run("fit --data " + csv.string() + " --base BASE --copulas independent A1 A2");
    REQUIRE(forced.exit_code == 0);
    const nlohmann::json forced_report = nlohmann::json::parse(forced.out);
    CHECK(forced_report["copula"]["family"] == "independent");
    CHECK(forced_report["copula"]["theta"].is_null());
    CHECK(forced_report["copula"]["loglik"] == 0.0);

    std::filesystem::remove(csv);
}

TEST_CASE("signals: JSON lines, verdict self-consistency, determinism") {
    const RunResult sim = run("simulate --n 500 --seed 4242");
    REQUIRE(sim.exit_code == 0);
    const auto csv = write_file("signals.csv", sim.out);

    const std::string cmd = "signals --data " + csv.string() + " --base BASE --epsilon 0.1 A1 A2";
    const RunResult a = run(cmd);
    REQUIRE(a.exit_code == 0);
    const RunResult b = run(cmd);
    CHECK(a.out == b.out); // byte-identical

    std::size_t lines = 0;
    std::size_t recount[3] = {0, 0, 0};
    std::stringstream stream(a.out);
    std::string line;
    while (std::getline(stream, line)) {
        if (line.empty()) continue;
        ++lines;
        const nlohmann::json sig = nlohmann::json::parse(line);
        CHECK(sig.contains("ts"));
        CHECK(sig.contains("u"));
        CHECK(sig.contains("v"));
        CHECK(sig.contains("h12"));
        CHECK(sig.contains("h21"));
        CHECK(sig.contains("verdict"));

        // Recount the verdict from the emitted h columns.
        const double h12 = sig["h12"].get<double>();
        const double h21 = sig["h21"].get<double>();
        const double eps = 0.1;
        std::string expect = "no_signal";
        if (h12 < eps && h21 > 1 - eps) expect = "asset1_underpriced";
        if (h12 > 1 - eps && h21 < eps) expect = "asset2_underpriced";
        CHECK(sig["verdict"] == expect);
        if (expect == "no_signal") ++recount[0];
        if (expect == "asset1_underpriced") ++recount[1];
        if (expect == "asset2_underpriced") ++recount[2];
    }
    CHECK(lines == 500);

    // stderr summary carries the same counts.
    std::ostringstream expected;
    expected << "signals: " << recount[0] << " no_signal, " << recount[1]
             << " asset1_underpriced, " << recount[2] << " asset2_underpriced";
    CHECK(a.err.find(expected.str()) != std::string::npos);

    std::filesystem::remove(csv);
}

TEST_CASE("alternate pipeline modes run end to end") {
    const RunResult sim = run("simulate --n 400 --seed 2025");
    REQUIRE(sim.exit_code == 0);
    const auto csv = write_file("modes.csv", sim.out);
    const std::string base_args = " --data " + csv.string() + " --base BASE A1 A2";

    const RunResult cumulative = run("fit --spread-on cumulative" + base_args);
    CHECK(cumulative.exit_code == 0);

    const RunResult empirical = run("fit --pit empirical" + base_args);
    CHECK(empirical.exit_code == 0);

    const RunResult full = run("fit --method full-mle" + base_args);
    REQUIRE(full.exit_code == 0);
    const nlohmann::json full_report = nlohmann::json::parse(full.out);
    CHECK(full_report["method"] == "full_mle");

    const nlohmann::json ifm_report =
        nlohmann::json::parse(run("fit" + base_args).out);
    CHECK(full_report["total_loglik"].get<double>() >=
          ifm_report["total_loglik"].get<double>() - 1e-6);

    // Empirical PIT with full MLE is contradictory and rejected up front.
    const RunResult clash = run("fit --method full-mle --pit empirical" + base_args);
    CHECK(clash.exit_code == 2);

    std::filesystem::remove(csv);
}

TEST_CASE("config file with flag override") {
    const auto conf = write_file("conf.txt", "epsilon = 0.2\nseed = 5\n");
    const RunResult r = run("simulate --config " + conf.string() + " --n 32");
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("seed 5") != std::string::npos);

    const RunResult overridden = run("simulate --config " + conf.string() + " --n 32 --seed 9");
    CHECK(overridden.exit_code == 0);
    CHECK(overridden.err.find("seed 9") != std::string::npos);

    const auto bad = write_file("bad.txt", "epsilon = 0.9\n");
    const RunResult broken = run("simulate --config " + bad.string() + " --n 32");
    CHECK(broken.exit_code == 2);

    std::filesystem::remove(conf);
    std::filesystem::remove(bad);
}

TEST_CASE("select-pairs: stable ranking and byte-identical reruns") {
    // Three assets plus base from the shipped generator; A1/A2 share the
    // spread dependence, EXTRA is an unrelated series appended by hand.
    const RunResult sim = run("simulate --n 120 --seed 31415");
    REQUIRE(sim.exit_code == 0);
    std::string data = sim.out;
    unsigned state = 99;
    double price = 50.0;
    for (int k = 0; k <= 120; ++k) {
        state = state * 1103515245u + 12345u;
        price *= 1.0 + ((state >> 16) % 2001 - 1000) / 100000.0;
        data += std::to_string((k + 1) * 86400) + ",EXTRA," + std::to_string(price) + "\n";
    }
    const auto csv = write_file("scan.csv", data);

    const std::string cmd = "select-pairs --data " + csv.string() + " --base BASE --top-k 2";
    const RunResult a = run(cmd);
    REQUIRE(a.exit_code == 0);
    const RunResult b = run(cmd);
    CHECK(a.out == b.out); // byte-identical

    const nlohmann::json ranking = nlohmann::json::parse(a.out);
    REQUIRE(ranking.size() == 3);
    CHECK(ranking[0]["correlation"].get<double>() >= ranking[1]["correlation"].get<double>());
    CHECK(ranking[1]["correlation"].get<double>() >= ranking[2]["correlation"].get<double>());
    for (const auto& entry : ranking) {
        CHECK(entry.contains("symbol_a"));
        CHECK(entry.contains("symbol_b"));
        CHECK(entry.contains("eg_statistic"));
        CHECK(entry.contains("cointegrated"));
    }
    // top_k = 2: the third entry carries no cointegration verdict.
    CHECK(ranking[2]["eg_statistic"].is_null());

    std::filesystem::remove(csv);
}

TEST_CASE("demo-pitfall emits the tagged scatter CSV") {
    const RunResult r = run("demo-pitfall --n 300 --rho 0.4 --seed 11");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("model,x,y\n", 0) == 0);
    std::size_t clayton = 0;
    std::size_t gumbel = 0;
    std::stringstream stream(r.out);
    std::string line;
    std::getline(stream, line); // header
    while (std::getline(stream, line)) {
        if (line.rfind("clayton,", 0) == 0) ++clayton;
        if (line.rfind("gumbel,", 0) == 0) ++gumbel;
    }
    CHECK(clayton == 300);
    CHECK(gumbel == 300);
    CHECK(r.err.find("clayton theta") != std::string::npos);
}

TEST_CASE("unknown flags and missing subcommand are usage errors") {
    CHECK(run("simulate --does-not-exist 5").exit_code == 2);
    CHECK(run("").exit_code == 2);
    CHECK(run("fit --data /nonexistent.csv --base B A1 A2").exit_code == 3);
}

TEST_CASE("epsilon validation through the CLI") {
    const RunResult r = run("signals --data x.csv --base BASE --epsilon 0.8 A1 A2");
    CHECK(r.exit_code == 2);
}
