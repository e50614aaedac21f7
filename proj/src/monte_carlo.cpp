#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "crn/runner.hpp"

namespace crn {

std::string format_float(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Summary summarize(std::span<const double> values) {
    Summary s;
    s.n = static_cast<int>(values.size());
    if (s.n == 0) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / s.n;
    if (s.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.se = std::sqrt(ss / (s.n - 1) / s.n);
    }
    return s;
}

Aggregate aggregate_episodes(StrategyKind strategy, int capacity, std::span<const EpisodeLog> logs) {
    Aggregate agg;
    agg.strategy = strategy;
    agg.capacity = capacity;
    agg.runs = static_cast<int>(logs.size());
    for (const EpisodeLog& log : logs) {
        agg.errors.merge(log.errors);
        if (auto v = log.peak_age()) agg.peak_age.push_back(*v);
        if (auto v = log.steady_mean_age()) agg.mean_age.push_back(*v);
        if (auto v = log.steady_missed()) agg.missed.push_back(*v);
        if (auto v = log.steady_unobservable()) agg.unobservable.push_back(*v);

        if (agg.per_period.size() < log.periods.size()) agg.per_period.resize(log.periods.size());
        for (std::size_t i = 0; i < log.periods.size(); ++i) {
            const PeriodSample& s = log.periods[i];
            PeriodAggregate& p = agg.per_period[i];
            if (s.mean_age) {
                p.sum_mean_age += *s.mean_age;
                ++p.mean_age_count;
            }
            p.sum_missed += s.missed;
            p.sum_active += s.total_active;
            ++p.count;
        }
    }
    return agg;
}

Aggregate run_monte_carlo(const RunConfig& config, int threads) {
    const auto runs = static_cast<std::size_t>(config.runs);
    std::vector<EpisodeLog> logs(runs);

    unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(runs));

    if (workers == 1) {
        for (std::size_t i = 0; i < runs; ++i) logs[i] = run_episode(config, config.seed + i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < runs; i = next++) {
                    try {
                        logs[i] = run_episode(config, config.seed + i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }
    return aggregate_episodes(config.strategy, config.params.C, logs);
}

std::vector<Aggregate> run_experiment(const RunConfig& config, std::span<const StrategyKind> strategies,
                                      std::span<const int> capacities, int threads) {
    std::vector<Aggregate> out;
    for (StrategyKind s : strategies) {
        for (int c : capacities) {
            RunConfig cell = config;
            cell.strategy = s;
            cell.params.C = c;
            cell.params.validate();
            out.push_back(run_monte_carlo(cell, threads));
        }
    }
    return out;
}

namespace {

std::ofstream open_output(const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + file.string());
    return out;
}

nlohmann::ordered_json summary_json(const Summary& s) {
    return {{"mean", s.mean}, {"se", s.se}, {"n", s.n}};
}

}  // namespace

void write_outputs(const RunConfig& config, std::span<const Aggregate> results, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw Error(ErrorCode::Io, "cannot create output directory " + dir.string());
    }

    {
        auto out = open_output(dir / "error_cdf.csv");
        out << "strategy,capacity,threshold_m,fraction\n";
        for (const Aggregate& a : results) {
            const auto fractions = a.errors.fractions();
            for (std::size_t i = 0; i < fractions.size(); ++i) {
                out << to_string(a.strategy) << ',' << a.capacity << ',' << format_float(a.errors.thresholds()[i])
                    << ',' << format_float(fractions[i]) << '\n';
            }
        }
    }
    {
        auto out = open_output(dir / "ages.csv");
        out << "strategy,capacity,period,mean_age\n";
        for (const Aggregate& a : results) {
            for (std::size_t i = 0; i < a.per_period.size(); ++i) {
                const PeriodAggregate& p = a.per_period[i];
                if (p.mean_age_count == 0) continue;
                out << to_string(a.strategy) << ',' << a.capacity << ',' << (i + 1) << ','
                    << format_float(p.sum_mean_age / static_cast<double>(p.mean_age_count)) << '\n';
            }
        }
    }
    {
        auto out = open_output(dir / "missed.csv");
        out << "strategy,capacity,period,mean_missed,total_active\n";
        for (const Aggregate& a : results) {
            for (std::size_t i = 0; i < a.per_period.size(); ++i) {
                const PeriodAggregate& p = a.per_period[i];
                if (p.count == 0) continue;
                const double n = static_cast<double>(p.count);
                out << to_string(a.strategy) << ',' << a.capacity << ',' << (i + 1) << ','
                    << format_float(p.sum_missed / n) << ',' << format_float(p.sum_active / n) << '\n';
            }
        }
    }
    {
        nlohmann::ordered_json doc;
        nlohmann::ordered_json echo;
        for (std::string_view key : RunConfig::keys()) {
            if (key == "output_dir" || key == "threads") continue;
            echo[std::string(key)] = *config.get(key);
        }
        doc["config"] = echo;
        doc["unobservable_floor"] =
            expected_unobservable(config.params.N_bar, config.params.p_o, config.params.M);
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const Aggregate& a : results) {
            rows.push_back({{"strategy", to_string(a.strategy)},
                            {"capacity", a.capacity},
                            {"runs", a.runs},
                            {"peak_age", summary_json(summarize(a.peak_age))},
                            {"mean_age", summary_json(summarize(a.mean_age))},
                            {"missed", summary_json(summarize(a.missed))},
                            {"unobservable", summary_json(summarize(a.unobservable))},
                            {"error_samples", a.errors.samples()}});
        }
        doc["results"] = rows;
        auto out = open_output(dir / "summary.json");
        out << doc.dump(2) << '\n';
    }
}

void write_trace(const NodeTrace& trace, const std::filesystem::path& file) {
    if (file.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(file.parent_path(), ec);
    }
    auto out = open_output(file);
    out << "cpi,true_x,true_y,est_x,est_y,flag\n";
    for (const TraceRow& r : trace.rows) {
        out << r.cpi << ',' << format_float(r.truth.x()) << ',' << format_float(r.truth.y()) << ','
            << format_float(r.estimate.x()) << ',' << format_float(r.estimate.y()) << ',' << (r.flag ? 1 : 0)
            << '\n';
    }
}

}  // namespace crn
