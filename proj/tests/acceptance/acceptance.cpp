// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"

#include "crn/runner.hpp"

using namespace crn;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const Aggregate& find(const std::vector<Aggregate>& results, StrategyKind kind, int capacity) {
    for (const Aggregate& a : results) {
        if (a.strategy == kind && a.capacity == capacity) return a;
    }
    throw std::runtime_error("missing aggregate");
}

/// First grid index where the CDF reaches one half.
std::size_t median_index(const std::vector<double>& cdf) {
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        if (cdf[i] >= 0.5) return i;
    }
    return cdf.size() - 1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_1(const std::vector<Aggregate>& r, const std::vector<double>& grid) {
    const auto aoi = find(r, StrategyKind::Aoi, 5).errors.fractions();
    const auto rnd = find(r, StrategyKind::Random, 5).errors.fractions();
    const std::size_t i = median_index(aoi);
    const double gap = aoi[i] - rnd[i];
    report(1, gap >= 0.05,
           fmt("at %.3g m AoI CDF %.3f vs random %.3f (gap %.1f pp, need >= 5)", grid[i], aoi[i], rnd[i], 100 * gap));
}

void criterion_2(const std::vector<Aggregate>& r, const std::vector<double>& grid) {
    const auto c2 = find(r, StrategyKind::Aoi, 2).errors.fractions();
    const auto c10 = find(r, StrategyKind::Aoi, 10).errors.fractions();
    const auto c15 = find(r, StrategyKind::Aoi, 15).errors.fractions();
    const std::size_t n = grid.size();
    double worst = 0.0;
    for (std::size_t i = n / 4; i < n - n / 4; ++i) worst = std::max(worst, std::abs(c10[i] - c15[i]));
    const std::size_t m = median_index(c15);
    const double drop = c15[m] - c2[m];
    report(2, worst <= 0.05 && drop >= 0.10,
           fmt("max |C10-C15| over middle half %.1f pp (need <= 5); C15-C2 at %.3g m %.1f pp (need >= 10)",
               100 * worst, grid[m], 100 * drop));
}

void criterion_3(const std::vector<Aggregate>& r) {
    const Summary a = summarize(find(r, StrategyKind::Aoi, 5).peak_age);
    const Summary u = summarize(find(r, StrategyKind::Ucb, 5).peak_age);
    const Summary x = summarize(find(r, StrategyKind::Random, 5).peak_age);
    auto z = [](const Summary& lo, const Summary& hi) {
        return (hi.mean - lo.mean) / std::sqrt(lo.se * lo.se + hi.se * hi.se);
    };
    const double z1 = z(a, u), z2 = z(u, x);
    report(3, z1 > 3.0 && z2 > 3.0,
           fmt("PAoI aoi %.3f, ucb %.3f, random %.3f; ucb-aoi %.1f SE, random-ucb %.1f SE (need > 3 each)", a.mean,
               u.mean, x.mean, z1, z2));
}

void criterion_4(const std::vector<Aggregate>& r) {
    const double c2 = summarize(find(r, StrategyKind::Aoi, 2).mean_age).mean;
    const double c10 = summarize(find(r, StrategyKind::Aoi, 10).mean_age).mean;
    const double c15 = summarize(find(r, StrategyKind::Aoi, 15).mean_age).mean;
    report(4, c10 <= 1.5 && c15 <= 1.5 && c2 >= 2.0,
           fmt("steady mean age C10 %.3f, C15 %.3f (need <= 1.5); C2 %.3f (need >= 2.0)", c10, c15, c2));
}

void criterion_5(const std::vector<Aggregate>& r, const SimParams& p) {
    double prev = INFINITY;
    bool decreasing = true;
    std::string series;
    for (int c : {2, 5, 10, 15}) {
        const double m = summarize(find(r, StrategyKind::Aoi, c).missed).mean;
        decreasing = decreasing && m < prev;
        prev = m;
        series += fmt(" C%d=%.3f", c, m);
    }
    const double full = prev;
    const double floor = expected_unobservable(p.N_bar, p.p_o, p.M);
    report(5, full >= 0.3 && full <= 1.5 && decreasing,
           fmt("missed%s; full feedback %.3f in [0.3, 1.5] (floor %.3f); strictly decreasing: %s", series.c_str(), full,
               floor, decreasing ? "yes" : "no"));
}

void criterion_6() {
    Rng rng = make_rng(606, Stream::Strategy);
    std::uniform_int_distribution<int> size(1, 8), kind(0, 2), age(1, 50), tracks(0, 12);
    std::uniform_real_distribution<double> sigma(0.05, 6.0), weight(-3.0, 3.0);
    std::bernoulli_distribution avail(0.4);
    int mismatches = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        const int m = size(rng);
        const int c = std::uniform_int_distribution<int>(1, m)(rng);
        const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const double beta = weight(rng), gamma = weight(rng);
        FcKnowledge knowledge(m);
        std::vector<bool> available(static_cast<std::size_t>(m));
        std::vector<std::pair<TargetId, int>> active;
        for (int j = tracks(rng); j > 0; --j) active.emplace_back(TargetId{static_cast<std::uint32_t>(j)}, age(rng));
        std::vector<double> term(static_cast<std::size_t>(m), 0.0);
        for (int k = 0; k < m; ++k) {
            const auto ki = static_cast<std::size_t>(k);
            available[ki] = avail(rng);
            for (const auto& [j, a] : active) {
                switch (kind(rng)) {
                    case 0: {
                        const double s = sigma(rng);
                        knowledge.sees[ki][j] = s;
                        term[ki] += a / s;
                        break;
                    }
                    case 1:
                        knowledge.cannot_see[ki].insert(j);
                        term[ki] += gamma;
                        break;
                    default: term[ki] += beta; break;
                }
            }
            if (!available[ki]) term[ki] *= alpha;
        }
        const SelectionInput input{1, c, available, knowledge, active, alpha, beta, gamma};
        const auto chosen = select_aoi(input);
        double got = 0.0;
        for (NodeId k : chosen) got += term[k.index()];
        const double best = oracle::best_subset_sum(term, c);
        const bool ok = chosen.size() == static_cast<std::size_t>(c) &&
                        std::abs(got - best) <= 1e-9 * std::max(1.0, std::abs(best));
        if (!ok) ++mismatches;
    }
    report(6, mismatches == 0, fmt("%d mismatches against exhaustive search over %d instances (M <= 8)", mismatches, trials));
}

void criterion_7() {
    // Randomized report traffic through the FC.
    Rng rng = make_rng(707, Stream::Strategy);
    const int m = 8;
    const long periods = 100000;
    FusionCenter fc(m);
    std::map<TargetId, int> previous;
    std::map<TargetId, AgeSeries> ages;
    std::bernoulli_distribution pick(0.3), retire(0.01);
    std::uniform_int_distribution<int> count(0, 4), target(0, 24);
    long violations = 0;
    for (long t = 1; t <= periods; ++t) {
        std::vector<NodeId> selected;
        std::vector<NodeReport> reports;
        const auto epoch = static_cast<std::uint32_t>(t / 5000) * 25;
        for (int k = 1; k <= m; ++k) {
            if (!pick(rng)) continue;
            selected.push_back(NodeId{k});
            NodeReport r{NodeId{k}, t, {}};
            std::set<std::uint32_t> ids;
            for (int n = count(rng); n > 0; --n) ids.insert(epoch + static_cast<std::uint32_t>(target(rng)));
            for (std::uint32_t j : ids) {
                ReportEntry e;
                e.target_id = TargetId{j};
                e.variance = 1.0;
                e.status = retire(rng) ? ReportStatus::Retired : ReportStatus::Active;
                r.entries.push_back(e);
            }
            reports.push_back(std::move(r));
        }
        const IngestOutcome out = fc.ingest(reports, selected, t);
        for (const auto& [j, a] : out.refreshed) ages[j].record(a);
        for (const auto& [j, track] : fc.tracks()) {
            auto it = previous.find(j);
            const bool ok = track.age >= 1 && (track.age == 1 || (it != previous.end() && track.age == it->second + 1));
            if (!ok) ++violations;
        }
        previous.clear();
        for (const auto& [j, track] : fc.tracks()) previous[j] = track.age;
    }
    long below_one = 0;
    for (const auto& [j, s] : ages) {
        if (auto p = peak_age(s); p && *p < 1.0) ++below_one;
    }

    // Every-period refresh: full feedback with an update every CPI.
    RunConfig full;
    full.params.C = full.params.M;
    full.params.P_u = 1.0;
    full.capacities = {full.params.M};
    full.cpis = 5000;
    full.warmup_periods = 100;
    full.finalize();
    const EpisodeLog log = run_episode(full, 77);
    long not_one = 0;
    for (const auto& [j, s] : log.ages) {
        for (int a : s.ages_at_update) not_one += (a != 1);
    }
    const auto paoi = log.peak_age();
    report(7, violations == 0 && below_one == 0 && not_one == 0 && paoi && *paoi == 1.0,
           fmt("%ld recurrence violations over %ld periods, %ld tracks with PAoI < 1, full-refresh PAoI %.6f",
               violations, periods, below_one, paoi.value_or(NAN)));
}

void criterion_8() {
    const int n = 100000;
    Rng rng = make_rng(808, Stream::Environment);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_new_target_count(rng, 0.1);
    const double poisson_mean = sum / n;
    const double poisson_sigma = std::sqrt(0.1 / n);

    // Inverse-Gamma(2, 1) has no finite variance, so the band uses the sample SE.
    Rng node = make_rng(808, Stream::Node);
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = sample_meas_variance(node, 2.0, 1.0);
        s1 += v;
        s2 += v * v;
    }
    const double ig_mean = s1 / n;
    const double ig_se = std::sqrt((s2 / n - ig_mean * ig_mean) / (n - 1));
    const bool ok_p = std::abs(poisson_mean - 0.1) <= 3.0 * poisson_sigma;
    const bool ok_ig = std::abs(ig_mean - 1.0) <= 3.0 * ig_se;
    report(8, ok_p && ok_ig,
           fmt("Poisson(0.1) mean %.5f (band +/- %.5f); inverse-Gamma(2,1) mean %.4f (band +/- %.4f)", poisson_mean,
               3.0 * poisson_sigma, ig_mean, 3.0 * ig_se));
}

void criterion_9() {
    const MotionModel still = MotionModel::constant_velocity(1.0, 0.0);
    const Vec2 v{11.0, -4.0};
    Vec2 truth{1200.0, 3400.0};
    FilterTrack t = init_track(TargetId{0}, truth, 1e-12, 0);
    double worst = 0.0;
    for (int n = 1; n <= 200; ++n) {
        truth += v;
        predict(t, still);
        update(t, truth, MeasurementModel(1e-12));
        if (n >= 3) worst = std::max(worst, (t.position() - truth).norm());
    }

    const MotionModel motion = MotionModel::constant_velocity(1.0, 0.05);
    const Eigen::Matrix4d L = motion.process_noise.llt().matrixL();
    Rng rng = make_rng(909, Stream::Measurement);
    std::normal_distribution<double> n01;
    StateVec x;
    x << 0.0, 0.0, 10.0 * n01(rng), 10.0 * n01(rng);
    FilterTrack f = init_track(TargetId{1}, Vec2{x(0) + n01(rng), x(1) + n01(rng)}, 1.0, 0);
    const int n = 10000;
    double nis = 0.0;
    for (int i = 0; i < n; ++i) {
        x = motion.transition * x + L * StateVec(n01(rng), n01(rng), n01(rng), n01(rng));
        predict(f, motion);
        nis += normalized_innovation_squared(update(f, Vec2{x(0) + n01(rng), x(1) + n01(rng)}, MeasurementModel(1.0)));
    }
    const double mean = nis / n;
    const double half = oracle::z99 * std::sqrt(4.0 / n);
    report(9, worst < 1e-6 && std::abs(mean - 2.0) <= half,
           fmt("noiseless replay max error %.2e m (need < 1e-6); mean NIS %.4f in 2 +/- %.4f", worst, mean, half));
}

void criterion_10(const RunConfig& base, const std::filesystem::path& root) {
    RunConfig c = base;
    c.runs = 12;
    const std::vector<StrategyKind> kinds{StrategyKind::Aoi, StrategyKind::Ucb, StrategyKind::Random};
    const std::vector<int> caps{5};
    const auto a = root / "determinism_sequential";
    const auto b = root / "determinism_parallel";
    write_outputs(c, run_experiment(c, kinds, caps, 1), a);
    write_outputs(c, run_experiment(c, kinds, caps, 4), b);
    int differing = 0;
    for (const char* name : {"summary.json", "error_cdf.csv", "ages.csv", "missed.csv"}) {
        const std::string x = slurp(a / name);
        if (x.empty() || x != slurp(b / name)) ++differing;
    }
    NodeTrace t1{NodeId{3}, std::nullopt, {}, false}, t2{NodeId{3}, std::nullopt, {}, false};
    run_episode(c, 99, &t1);
    run_episode(c, 99, &t2);
    write_trace(t1, a / "trace.csv");
    write_trace(t2, b / "trace.csv");
    if (slurp(a / "trace.csv") != slurp(b / "trace.csv")) ++differing;
    report(10, differing == 0, fmt("%d of 5 output files differ between sequential and 4-thread runs", differing));
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path out = argc > 1 ? argv[1] : "acceptance_out";
    const auto start = std::chrono::steady_clock::now();

    RunConfig config;
    config.cpis = 10000;
    config.runs = 50;
    config.seed = 2024;
    config.finalize();

    const std::vector<StrategyKind> aoi{StrategyKind::Aoi};
    const std::vector<StrategyKind> baselines{StrategyKind::Ucb, StrategyKind::Random};
    const std::vector<int> sweep{2, 5, 10, 15};
    const std::vector<int> five{5};
    std::vector<Aggregate> results = run_experiment(config, aoi, sweep, config.threads);
    for (Aggregate& a : run_experiment(config, baselines, five, config.threads)) results.push_back(std::move(a));
    write_outputs(config, results, out / "experiment");
    const double experiment_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("experiment: 6 configurations x %d runs x %ld CPIs in %.1f s\n", config.runs, config.cpis,
                experiment_s);

    criterion_1(results, config.thresholds);
    criterion_2(results, config.thresholds);
    criterion_3(results);
    criterion_4(results);
    criterion_5(results, config.params);
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(config, out);

    const double total_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d of 10 criteria failed; total %.1f s\n", failures, total_s);
    return failures;
}
