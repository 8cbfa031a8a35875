#include "copsig/config.hpp"

#include "copsig/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace copsig {

namespace {

std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = strip(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double parsed = std::strtod(value.c_str(), &end);
    require(end == value.c_str() + value.size() && !value.empty(), ErrorCode::InvalidArgument,
            "config: bad numeric value '" + value + "' for key '" + key + "'");
    return parsed;
}

long long parse_int(const std::string& key, const std::string& value) {
    long long parsed = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    require(ec == std::errc() && ptr == value.data() + value.size(), ErrorCode::InvalidArgument,
            "config: bad integer value '" + value + "' for key '" + key + "'");
    return parsed;
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

} // namespace

const char* spread_basis_name(SpreadBasis basis) {
    return basis == SpreadBasis::Returns ? "returns" : "cumulative";
}

void validate_config(const RunConfig& config) {
    require(std::isfinite(config.epsilon) && config.epsilon > 0.0 && config.epsilon < 0.5,
            ErrorCode::EpsilonOutOfRange,
            "config: epsilon must lie strictly inside (0, 0.5)");
    require(!config.marginal_families.empty(), ErrorCode::InvalidArgument,
            "config: marginal family list is empty");
    require(!config.copula_families.empty(), ErrorCode::InvalidArgument,
            "config: copula family list is empty");
    require(config.eg_lags >= 0, ErrorCode::InvalidArgument, "config: eg_lags must be >= 0");
    require(config.top_k >= 1, ErrorCode::InvalidArgument, "config: top_k must be >= 1");
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    std::stringstream ss(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        require(eq != std::string::npos, ErrorCode::InvalidArgument,
                "config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));

        if (key == "data") {
            config.data_path = value;
        } else if (key == "base") {
            config.base_symbol = value;
        } else if (key == "epsilon") {
            config.epsilon = parse_double(key, value);
        } else if (key == "marginals") {
            config.marginal_families.clear();
            for (const std::string& name : split_list(value)) {
                config.marginal_families.push_back(margins::family_from_name(name));
            }
        } else if (key == "copulas") {
            config.copula_families.clear();
            for (const std::string& name : split_list(value)) {
                config.copula_families.push_back(copula::family_from_name(name));
            }
        } else if (key == "method") {
            if (value == "ifm") {
                config.fit_method = copula::FitMethod::IFM;
            } else if (value == "full_mle" || value == "full-mle") {
                config.fit_method = copula::FitMethod::FullMLE;
            } else {
                raise(ErrorCode::InvalidArgument, "config: unknown method '" + value + "'");
            }
        } else if (key == "spread_on") {
            if (value == "returns") {
                config.spread_on = SpreadBasis::Returns;
            } else if (value == "cumulative") {
                config.spread_on = SpreadBasis::Cumulative;
            } else {
                raise(ErrorCode::InvalidArgument, "config: unknown spread_on '" + value + "'");
            }
        } else if (key == "pit") {
            if (value == "parametric") {
                config.pit = copula::PitMode::Parametric;
            } else if (value == "empirical") {
                config.pit = copula::PitMode::Empirical;
            } else {
                raise(ErrorCode::InvalidArgument, "config: unknown pit mode '" + value + "'");
            }
        } else if (key == "eg_lags") {
            config.eg_lags = static_cast<int>(parse_int(key, value));
        } else if (key == "top_k") {
            config.top_k = static_cast<int>(parse_int(key, value));
        } else if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else {
            raise(ErrorCode::InvalidArgument, "config: unknown key '" + key + "'");
        }
    }
    validate_config(config);
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::Io, "cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
    std::ostringstream out;
    if (!config.data_path.empty()) out << "data = " << config.data_path << "\n";
    if (!config.base_symbol.empty()) out << "base = " << config.base_symbol << "\n";
    out << "epsilon = " << format_double(config.epsilon) << "\n";
    out << "marginals = ";
    for (std::size_t i = 0; i < config.marginal_families.size(); ++i) {
        out << (i ? "," : "") << margins::family_name(config.marginal_families[i]);
    }
    out << "\n";
    out << "copulas = ";
    for (std::size_t i = 0; i < config.copula_families.size(); ++i) {
        out << (i ? "," : "") << copula::family_name(config.copula_families[i]);
    }
    out << "\n";
    out << "method = " << copula::fit_method_name(config.fit_method) << "\n";
    out << "spread_on = " << spread_basis_name(config.spread_on) << "\n";
    out << "pit = " << copula::pit_mode_name(config.pit) << "\n";
    out << "eg_lags = " << config.eg_lags << "\n";
    out << "top_k = " << config.top_k << "\n";
    out << "seed = " << config.seed << "\n";
    return out.str();
}

} // namespace copsig
