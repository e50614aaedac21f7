// crnsim: command-line front end over the crn C API.

#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crn/crn.h"

namespace {

struct ConfigDeleter {
    void operator()(crn_config* c) const { crn_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<crn_config, ConfigDeleter>;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    std::optional<long> cpis;
    std::optional<int> threads;
    std::string out_dir;
    std::vector<std::string> overrides;  // key=value

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Config file (key = value lines)")->check(CLI::ExistingFile);
        cmd->add_option("--seed", seed, "Base seed; episode i uses seed+i");
        cmd->add_option("--runs", runs, "Monte Carlo episode count");
        cmd->add_option("--cpis", cpis, "Episode length in CPIs");
        cmd->add_option("--threads", threads, "Worker threads (0: hardware concurrency)");
        cmd->add_option("--out", out_dir, "Output directory");
        cmd->add_option("--set", overrides, "Override any config key, key=value (repeatable)");
    }
};

int report_failure(crn_status status) {
    std::fprintf(stderr, "crnsim: %s: %s\n", crn_status_string(status), crn_last_error());
    return static_cast<int>(status);
}

/// Loads the config file (or defaults) and applies flag overrides.
std::optional<int> build_config(const CommonOptions& opts, const std::map<std::string, std::string>& extra,
                                ConfigPtr& out) {
    crn_config* raw = nullptr;
    crn_status st = opts.config_path.empty() ? crn_config_create(&raw) : crn_config_load(opts.config_path.c_str(), &raw);
    if (st != CRN_OK) return report_failure(st);
    out.reset(raw);

    auto set = [&](const std::string& key, const std::string& value) -> std::optional<int> {
        if (crn_status s = crn_config_set(out.get(), key.c_str(), value.c_str()); s != CRN_OK) {
            return report_failure(s);
        }
        return std::nullopt;
    };
    for (const std::string& kv : opts.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "crnsim: --set expects key=value, got '%s'\n", kv.c_str());
            return 2;
        }
        if (auto rc = set(kv.substr(0, eq), kv.substr(eq + 1))) return rc;
    }
    if (opts.seed) {
        if (auto rc = set("seed", std::to_string(*opts.seed))) return rc;
    }
    if (opts.runs) {
        if (auto rc = set("runs", std::to_string(*opts.runs))) return rc;
    }
    if (opts.cpis) {
        if (auto rc = set("cpis", std::to_string(*opts.cpis))) return rc;
    }
    if (opts.threads) {
        if (auto rc = set("threads", std::to_string(*opts.threads))) return rc;
    }
    if (!opts.out_dir.empty()) {
        if (auto rc = set("output_dir", opts.out_dir)) return rc;
    }
    for (const auto& [key, value] : extra) {
        if (auto rc = set(key, value)) return rc;
    }
    if (crn_status s = crn_config_validate(out.get()); s != CRN_OK) return report_failure(s);
    return std::nullopt;
}

std::string config_value(const crn_config* config, const char* key) {
    size_t needed = 0;
    crn_config_get(config, key, nullptr, 0, &needed);
    std::string value(needed, '\0');
    if (crn_config_get(config, key, value.data(), value.size(), nullptr) != CRN_OK) return {};
    value.resize(needed ? needed - 1 : 0);
    return value;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Communication-limited cognitive radar network simulator"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    std::string strategy;
    std::optional<int> capacity;
    auto* run = app.add_subcommand("run", "Monte Carlo run for one strategy and capacity");
    run_opts.attach(run);
    run->add_option("--strategy", strategy, "aoi, ucb or random")->check(CLI::IsMember({"aoi", "ucb", "random"}));
    run->add_option("--capacity", capacity, "Nodes polled per update period (C)");

    CommonOptions sweep_opts;
    std::string capacities;
    std::string strategies;
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo runs over strategies x capacities");
    sweep_opts.attach(sweep);
    sweep->add_option("--capacities", capacities, "Comma list of capacities (default: config capacities)");
    sweep->add_option("--strategies", strategies, "Comma list of strategies (default: config strategy)");

    CommonOptions trace_opts;
    int trace_node = 1;
    std::int64_t trace_target = -1;
    auto* trace = app.add_subcommand("trace-node", "Single-node track trace with flag events (trace.csv)");
    trace_opts.attach(trace);
    trace->add_option("--node", trace_node, "Node id, 1..M")->required();
    trace->add_option("--target", trace_target, "Target id to follow (default: first tracked)");

    auto* version = app.add_subcommand("version", "Print the library version");

    CLI11_PARSE(app, argc, argv);

    if (version->parsed()) {
        std::printf("crnsim %s\n", crn_version());
        return 0;
    }

    ConfigPtr config;
    if (run->parsed()) {
        std::map<std::string, std::string> extra;
        if (!strategy.empty()) extra["strategy"] = strategy;
        if (capacity) extra["C"] = std::to_string(*capacity);
        if (auto rc = build_config(run_opts, extra, config)) return *rc;
        if (crn_status s = crn_run(config.get(), nullptr, nullptr, nullptr); s != CRN_OK) return report_failure(s);
        std::printf("wrote results to %s\n", config_value(config.get(), "output_dir").c_str());
        return 0;
    }
    if (sweep->parsed()) {
        if (auto rc = build_config(sweep_opts, {}, config)) return *rc;
        const std::string caps = capacities.empty() ? config_value(config.get(), "capacities") : capacities;
        crn_status s = crn_run(config.get(), strategies.empty() ? nullptr : strategies.c_str(), caps.c_str(), nullptr);
        if (s != CRN_OK) return report_failure(s);
        std::printf("wrote results to %s\n", config_value(config.get(), "output_dir").c_str());
        return 0;
    }
    if (trace->parsed()) {
        if (auto rc = build_config(trace_opts, {}, config)) return *rc;
        const std::string dir = config_value(config.get(), "output_dir");
        const std::string path = dir + "/trace.csv";
        const std::uint64_t seed = std::stoull(config_value(config.get(), "seed"));
        size_t rows = 0;
        crn_status s = crn_trace_node(config.get(), trace_node, trace_target, seed, path.c_str(), &rows);
        if (s != CRN_OK) return report_failure(s);
        std::printf("wrote %zu rows to %s\n", rows, path.c_str());
        return 0;
    }
    return 0;
}
