#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crn/metrics.hpp"
#include "crn/params.hpp"
#include "crn/selection.hpp"

namespace crn {

struct RunConfig {
    SimParams params;
    bool p_s_explicit = false;
    StrategyKind strategy = StrategyKind::Aoi;
    long cpis = 10000;
    int runs = 50;
    std::uint64_t seed = 1;
    std::vector<int> capacities{2, 5, 10, 15};
    std::string output_dir = "out";
    std::vector<double> thresholds = threshold_grid(0.0, 30.0, 60);
    int warmup_periods = 500;
    bool aoi_marginal = false;
    int threads = 0;  // 0: one per hardware thread

    /// Sets one key from its text form. Throws Error(Config) naming the key.
    void set(std::string_view key, std::string_view value);
    /// Text form of a key's current value; nullopt for unknown keys.
    std::optional<std::string> get(std::string_view key) const;
    /// Derives p_s = N_bar * p_r unless it was set explicitly, then validates.
    void finalize();

    static const std::vector<std::string_view>& keys();
};

/// `key = value` lines; `#` starts a comment. Returns a finalized config.
RunConfig load_config_text(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

struct PeriodSample {
    long period = 0;
    long cpi = 0;
    std::optional<double> mean_age;
    int missed = 0;
    int total_active = 0;
    int fc_tracks = 0;
    int available = 0;
    int unobservable = 0;
    std::vector<NodeId> selected;
};

struct EpisodeLog {
    std::vector<PeriodSample> periods;
    ErrorHistogram errors;                 // post-warm-up (track, period) samples
    std::map<TargetId, AgeSeries> ages;    // post-warm-up refreshes
    int warmup_periods = 0;

    /// Per-track peak age averaged over tracks with at least one refresh.
    std::optional<double> peak_age() const;
    std::optional<double> steady_mean_age() const;
    std::optional<double> steady_missed() const;
    std::optional<double> steady_unobservable() const;
};

struct TraceRow {
    long cpi = 0;
    Vec2 truth = Vec2::Zero();
    Vec2 estimate = Vec2::Zero();
    bool flag = false;
};

/// Single-node, single-target track trace. When `target` is unset the first
/// target the node starts tracking is followed.
struct NodeTrace {
    NodeId node;
    std::optional<TargetId> target;
    std::vector<TraceRow> rows;
    bool finished = false;
};

/// One episode: CPI loop with Bernoulli(P_u) update periods. Pure function
/// of (config, seed).
EpisodeLog run_episode(const RunConfig& config, std::uint64_t seed, NodeTrace* trace = nullptr);

struct Summary {
    double mean = 0.0;
    double se = 0.0;
    int n = 0;
};
Summary summarize(std::span<const double> values);

struct PeriodAggregate {
    double sum_mean_age = 0.0;
    long mean_age_count = 0;
    double sum_missed = 0.0;
    double sum_active = 0.0;
    long count = 0;
};

struct Aggregate {
    StrategyKind strategy = StrategyKind::Aoi;
    int capacity = 0;
    int runs = 0;
    ErrorHistogram errors;
    std::vector<double> peak_age;  // per episode, undefined episodes dropped
    std::vector<double> mean_age;
    std::vector<double> missed;
    std::vector<double> unobservable;
    std::vector<PeriodAggregate> per_period;
};

/// Combines episode logs in index order.
Aggregate aggregate_episodes(StrategyKind strategy, int capacity, std::span<const EpisodeLog> logs);

/// `config.runs` episodes with seeds seed+i for config.strategy and
/// config.params.C. Results do not depend on `threads`.
Aggregate run_monte_carlo(const RunConfig& config, int threads);

std::vector<Aggregate> run_experiment(const RunConfig& config, std::span<const StrategyKind> strategies,
                                      std::span<const int> capacities, int threads);

/// summary.json, error_cdf.csv, ages.csv, missed.csv. Throws Error(Io).
void write_outputs(const RunConfig& config, std::span<const Aggregate> results, const std::filesystem::path& dir);

/// trace.csv for a node trace. Throws Error(Io).
void write_trace(const NodeTrace& trace, const std::filesystem::path& file);

/// Formats a float with 6 significant digits.
std::string format_float(double v);

}  // namespace crn
