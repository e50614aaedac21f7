#include <charconv>
#include <fstream>
#include <sstream>

#include "crn/runner.hpp"

namespace crn {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
    throw Error(ErrorCode::Config,
                std::string(key) + ": cannot parse '" + std::string(value) + "' as " + std::string(expected));
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) bad_value(key, text, "a number");
    return v;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
    text = trim(text);
    Int v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) bad_value(key, text, "an integer");
    return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "on" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "off" || text == "no") return false;
    bad_value(key, text, "a boolean");
}

template <typename Fn>
void split_list(std::string_view text, Fn&& fn) {
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = trim(text.substr(0, comma));
        if (!item.empty()) fn(item);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
}

template <typename T>
std::string join(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        if constexpr (std::is_floating_point_v<T>) {
            out += format_float(values[i]);
        } else {
            out += std::to_string(values[i]);
        }
    }
    return out;
}

}  // namespace

const std::vector<std::string_view>& RunConfig::keys() {
    static const std::vector<std::string_view> k{
        "p_s",       "p_r",          "p_v",          "p_o",          "a",           "b",
        "alpha",     "beta",         "gamma",        "d_I",          "a_max",       "tau",
        "P_u",       "C",            "M",            "N_bar",        "region_x_min", "region_x_max",
        "region_y_min", "region_y_max", "speed_min", "speed_max",    "q",           "dt",
        "strategy",  "cpis",         "runs",         "seed",         "capacities",  "output_dir",
        "thresholds", "warmup_periods", "aoi_marginal", "threads"};
    return k;
}

void RunConfig::set(std::string_view key, std::string_view value) {
    SimParams& p = params;
    value = trim(value);
    if (key == "p_s") {
        p.p_s = parse_double(key, value);
        p_s_explicit = true;
    } else if (key == "p_r") p.p_r = parse_double(key, value);
    else if (key == "p_v") p.p_v = parse_double(key, value);
    else if (key == "p_o") p.p_o = parse_double(key, value);
    else if (key == "a") p.a = parse_double(key, value);
    else if (key == "b") p.b = parse_double(key, value);
    else if (key == "alpha") p.alpha = parse_double(key, value);
    else if (key == "beta") p.beta = parse_double(key, value);
    else if (key == "gamma") p.gamma = parse_double(key, value);
    else if (key == "d_I") p.d_I = parse_double(key, value);
    else if (key == "a_max") p.a_max = parse_int<int>(key, value);
    else if (key == "tau") p.tau = parse_int<int>(key, value);
    else if (key == "P_u") p.P_u = parse_double(key, value);
    else if (key == "C") p.C = parse_int<int>(key, value);
    else if (key == "M") p.M = parse_int<int>(key, value);
    else if (key == "N_bar") p.N_bar = parse_double(key, value);
    else if (key == "region_x_min") p.region.x_min = parse_double(key, value);
    else if (key == "region_x_max") p.region.x_max = parse_double(key, value);
    else if (key == "region_y_min") p.region.y_min = parse_double(key, value);
    else if (key == "region_y_max") p.region.y_max = parse_double(key, value);
    else if (key == "speed_min") p.speed_min = parse_double(key, value);
    else if (key == "speed_max") p.speed_max = parse_double(key, value);
    else if (key == "q") p.q = parse_double(key, value);
    else if (key == "dt") p.dt = parse_double(key, value);
    else if (key == "strategy") {
        auto s = parse_strategy(value);
        if (!s) bad_value(key, value, "one of aoi, ucb, random");
        strategy = *s;
    } else if (key == "cpis") cpis = parse_int<long>(key, value);
    else if (key == "runs") runs = parse_int<int>(key, value);
    else if (key == "seed") seed = parse_int<std::uint64_t>(key, value);
    else if (key == "capacities") {
        std::vector<int> caps;
        split_list(value, [&](std::string_view item) { caps.push_back(parse_int<int>(key, item)); });
        if (caps.empty()) bad_value(key, value, "a non-empty integer list");
        capacities = std::move(caps);
    } else if (key == "output_dir") {
        if (value.empty()) bad_value(key, value, "a path");
        output_dir = std::string(value);
    } else if (key == "thresholds") {
        std::vector<double> grid;
        split_list(value, [&](std::string_view item) { grid.push_back(parse_double(key, item)); });
        if (grid.empty()) bad_value(key, value, "a non-empty number list");
        thresholds = std::move(grid);
    } else if (key == "warmup_periods") warmup_periods = parse_int<int>(key, value);
    else if (key == "aoi_marginal") aoi_marginal = parse_bool(key, value);
    else if (key == "threads") threads = parse_int<int>(key, value);
    else throw Error(ErrorCode::Config, "unknown config key '" + std::string(key) + "'");
}

std::optional<std::string> RunConfig::get(std::string_view key) const {
    const SimParams& p = params;
    auto num = [](double v) { return format_float(v); };
    if (key == "p_s") return num(p.p_s);
    if (key == "p_r") return num(p.p_r);
    if (key == "p_v") return num(p.p_v);
    if (key == "p_o") return num(p.p_o);
    if (key == "a") return num(p.a);
    if (key == "b") return num(p.b);
    if (key == "alpha") return num(p.alpha);
    if (key == "beta") return num(p.beta);
    if (key == "gamma") return num(p.gamma);
    if (key == "d_I") return num(p.d_I);
    if (key == "a_max") return std::to_string(p.a_max);
    if (key == "tau") return std::to_string(p.tau);
    if (key == "P_u") return num(p.P_u);
    if (key == "C") return std::to_string(p.C);
    if (key == "M") return std::to_string(p.M);
    if (key == "N_bar") return num(p.N_bar);
    if (key == "region_x_min") return num(p.region.x_min);
    if (key == "region_x_max") return num(p.region.x_max);
    if (key == "region_y_min") return num(p.region.y_min);
    if (key == "region_y_max") return num(p.region.y_max);
    if (key == "speed_min") return num(p.speed_min);
    if (key == "speed_max") return num(p.speed_max);
    if (key == "q") return num(p.q);
    if (key == "dt") return num(p.dt);
    if (key == "strategy") return std::string(to_string(strategy));
    if (key == "cpis") return std::to_string(cpis);
    if (key == "runs") return std::to_string(runs);
    if (key == "seed") return std::to_string(seed);
    if (key == "capacities") return join(capacities);
    if (key == "output_dir") return output_dir;
    if (key == "thresholds") return join(thresholds);
    if (key == "warmup_periods") return std::to_string(warmup_periods);
    if (key == "aoi_marginal") return std::string(aoi_marginal ? "true" : "false");
    if (key == "threads") return std::to_string(threads);
    return std::nullopt;
}

void RunConfig::finalize() {
    if (!p_s_explicit) params.p_s = params.N_bar * params.p_r;
    params.validate();
    if (cpis < 1) throw Error(ErrorCode::Config, "cpis: must be >= 1");
    if (runs < 1) throw Error(ErrorCode::Config, "runs: must be >= 1");
    if (warmup_periods < 0) throw Error(ErrorCode::Config, "warmup_periods: must be >= 0");
    if (threads < 0) throw Error(ErrorCode::Config, "threads: must be >= 0");
    for (int c : capacities) {
        if (c < 1 || c > params.M) {
            throw Error(ErrorCode::Config, "capacities: every entry must be in [1, M]");
        }
    }
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw Error(ErrorCode::Config, "thresholds: must be ascending");
    }
}

RunConfig load_config_text(std::string_view text) {
    RunConfig config;
    int line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::Config, "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    config.finalize();
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_config_text(buffer.str());
}

}  // namespace crn
