#include "crn/crn.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "crn/runner.hpp"

struct crn_config {
    crn::RunConfig config;
};

struct crn_episode {
    crn::EpisodeLog log;
};

namespace {

thread_local std::string g_last_error;

crn_status to_status(crn::ErrorCode code) {
    switch (code) {
        case crn::ErrorCode::InvalidArgument: return CRN_ERR_INVALID_ARGUMENT;
        case crn::ErrorCode::Config: return CRN_ERR_CONFIG;
        case crn::ErrorCode::Io: return CRN_ERR_IO;
        case crn::ErrorCode::Protocol: return CRN_ERR_PROTOCOL;
        case crn::ErrorCode::Numerical: return CRN_ERR_NUMERICAL;
        case crn::ErrorCode::Logic: return CRN_ERR_LOGIC;
    }
    return CRN_ERR_INTERNAL;
}

crn_status fail(crn_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

template <typename Fn>
crn_status guarded(Fn&& fn) noexcept {
    try {
        return fn();
    } catch (const crn::Error& e) {
        return fail(to_status(e.code()), e.what());
    } catch (const std::exception& e) {
        return fail(CRN_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(CRN_ERR_INTERNAL, "unknown exception");
    }
}

crn::RunConfig finalized(const crn_config* config) {
    crn::RunConfig copy = config->config;
    copy.finalize();
    return copy;
}

std::vector<std::string_view> split(std::string_view text) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = text.find(',');
        std::string_view item = text.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

extern "C" {

const char* crn_version(void) { return CRN_VERSION_STRING; }

const char* crn_last_error(void) { return g_last_error.c_str(); }

const char* crn_status_string(crn_status status) {
    switch (status) {
        case CRN_OK: return "ok";
        case CRN_ERR_INVALID_ARGUMENT: return "invalid argument";
        case CRN_ERR_CONFIG: return "configuration error";
        case CRN_ERR_IO: return "i/o error";
        case CRN_ERR_PROTOCOL: return "protocol error";
        case CRN_ERR_NUMERICAL: return "numerical failure";
        case CRN_ERR_LOGIC: return "logic error";
        case CRN_ERR_BUFFER_TOO_SMALL: return "buffer too small";
        case CRN_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

crn_status crn_config_create(crn_config** out) {
    if (!out) return fail(CRN_ERR_INVALID_ARGUMENT, "crn_config_create: out is null");
    return guarded([&] {
        auto* handle = new crn_config{};
        handle->config.finalize();
        *out = handle;
        return CRN_OK;
    });
}

crn_status crn_config_load(const char* path, crn_config** out) {
    if (!path || !out) return fail(CRN_ERR_INVALID_ARGUMENT, "crn_config_load: null argument");
    return guarded([&] {
        *out = new crn_config{crn::load_config(path)};
        return CRN_OK;
    });
}

crn_status crn_config_parse(const char* text, crn_config** out) {
    if (!text || !out) return fail(CRN_ERR_INVALID_ARGUMENT, "crn_config_parse: null argument");
    return guarded([&] {
        *out = new crn_config{crn::load_config_text(text)};
        return CRN_OK;
    });
}

void crn_config_destroy(crn_config* config) { delete config; }

crn_status crn_config_set(crn_config* config, const char* key, const char* value) {
    if (!config || !key || !value) return fail(CRN_ERR_INVALID_ARGUMENT, "crn_config_set: null argument");
    return guarded([&] {
        config->config.set(key, value);
        return CRN_OK;
    });
}

crn_status crn_config_validate(crn_config* config) {
    if (!config) return fail(CRN_ERR_INVALID_ARGUMENT, "crn_config_validate: config is null");
    return guarded([&] {
        crn::RunConfig copy = config->config;
        copy.finalize();
        config->config = std::move(copy);
        return CRN_OK;
    });
}

crn_status crn_config_get(const crn_config* config, const char* key, char* buf, size_t buf_len, size_t* needed) {
    if (!config || !key) return fail(CRN_ERR_INVALID_ARGUMENT, "crn_config_get: null argument");
    return guarded([&] {
        const auto value = config->config.get(key);
        if (!value) return fail(CRN_ERR_CONFIG, "unknown config key '" + std::string(key) + "'");
        const std::size_t size = value->size() + 1;
        if (needed) *needed = size;
        if (!buf || buf_len < size) return fail(CRN_ERR_BUFFER_TOO_SMALL, "crn_config_get: buffer too small");
        std::memcpy(buf, value->c_str(), size);
        return CRN_OK;
    });
}

crn_status crn_run(const crn_config* config, const char* strategies, const char* capacities, const char* out_dir) {
    if (!config) return fail(CRN_ERR_INVALID_ARGUMENT, "crn_run: config is null");
    return guarded([&] {
        crn::RunConfig cfg = finalized(config);

        std::vector<crn::StrategyKind> kinds;
        if (strategies) {
            for (std::string_view name : split(strategies)) {
                auto kind = crn::parse_strategy(name);
                if (!kind) return fail(CRN_ERR_CONFIG, "strategy: unknown strategy '" + std::string(name) + "'");
                kinds.push_back(*kind);
            }
            if (kinds.empty()) return fail(CRN_ERR_CONFIG, "strategy: empty strategy list");
        } else {
            kinds.push_back(cfg.strategy);
        }

        std::vector<int> caps;
        if (capacities) {
            cfg.set("capacities", capacities);
            cfg.finalize();
            caps = cfg.capacities;
        } else {
            caps.push_back(cfg.params.C);
        }

        const std::string dir = out_dir ? std::string(out_dir) : cfg.output_dir;
        const auto results = crn::run_experiment(cfg, kinds, caps, cfg.threads);
        crn::write_outputs(cfg, results, dir);
        return CRN_OK;
    });
}

crn_status crn_trace_node(const crn_config* config, int32_t node, int64_t target, uint64_t seed,
                          const char* out_path, size_t* rows) {
    if (!config || !out_path) return fail(CRN_ERR_INVALID_ARGUMENT, "crn_trace_node: null argument");
    return guarded([&] {
        crn::RunConfig cfg = finalized(config);
        if (node < 1 || node > cfg.params.M) {
            return fail(CRN_ERR_INVALID_ARGUMENT, "crn_trace_node: node must be in [1, M]");
        }
        crn::NodeTrace trace;
        trace.node = crn::NodeId{node};
        if (target >= 0) trace.target = crn::TargetId{static_cast<std::uint32_t>(target)};
        crn::run_episode(cfg, seed, &trace);
        crn::write_trace(trace, out_path);
        if (rows) *rows = trace.rows.size();
        return CRN_OK;
    });
}

crn_status crn_episode_run(const crn_config* config, uint64_t seed, crn_episode** out) {
    if (!config || !out) return fail(CRN_ERR_INVALID_ARGUMENT, "crn_episode_run: null argument");
    return guarded([&] {
        crn::RunConfig cfg = finalized(config);
        *out = new crn_episode{crn::run_episode(cfg, seed)};
        return CRN_OK;
    });
}

void crn_episode_destroy(crn_episode* episode) { delete episode; }

crn_status crn_episode_period_count(const crn_episode* episode, size_t* out) {
    if (!episode || !out) return fail(CRN_ERR_INVALID_ARGUMENT, "crn_episode_period_count: null argument");
    *out = episode->log.periods.size();
    return CRN_OK;
}

crn_status crn_episode_period(const crn_episode* episode, size_t index, crn_period_stats* out) {
    if (!episode || !out) return fail(CRN_ERR_INVALID_ARGUMENT, "crn_episode_period: null argument");
    if (index >= episode->log.periods.size()) {
        return fail(CRN_ERR_INVALID_ARGUMENT, "crn_episode_period: index out of range");
    }
    const crn::PeriodSample& s = episode->log.periods[index];
    out->period = s.period;
    out->cpi = s.cpi;
    out->mean_age = s.mean_age.value_or(std::numeric_limits<double>::quiet_NaN());
    out->missed = s.missed;
    out->total_active = s.total_active;
    out->fc_tracks = s.fc_tracks;
    out->available = s.available;
    out->unobservable = s.unobservable;
    out->selected_count = static_cast<int32_t>(s.selected.size());
    return CRN_OK;
}

crn_status crn_episode_selected(const crn_episode* episode, size_t index, int32_t* nodes, size_t capacity,
                                size_t* count) {
    if (!episode || !count) return fail(CRN_ERR_INVALID_ARGUMENT, "crn_episode_selected: null argument");
    if (index >= episode->log.periods.size()) {
        return fail(CRN_ERR_INVALID_ARGUMENT, "crn_episode_selected: index out of range");
    }
    const auto& selected = episode->log.periods[index].selected;
    *count = selected.size();
    if (!nodes || capacity < selected.size()) {
        return fail(CRN_ERR_BUFFER_TOO_SMALL, "crn_episode_selected: buffer too small");
    }
    for (std::size_t i = 0; i < selected.size(); ++i) nodes[i] = selected[i].value;
    return CRN_OK;
}

crn_status crn_episode_peak_age(const crn_episode* episode, double* out) {
    if (!episode || !out) return fail(CRN_ERR_INVALID_ARGUMENT, "crn_episode_peak_age: null argument");
    *out = episode->log.peak_age().value_or(std::numeric_limits<double>::quiet_NaN());
    return CRN_OK;
}

double crn_expected_unobservable(double n_bar, double p_o, int32_t m) {
    return crn::expected_unobservable(n_bar, p_o, m);
}

}  // extern "C"
