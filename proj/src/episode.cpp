#include <algorithm>
#include <numeric>

#include "crn/runner.hpp"

namespace crn {

namespace {

std::optional<double> mean_over_steady(const EpisodeLog& log, auto&& value) {
    double sum = 0.0;
    long n = 0;
    for (const PeriodSample& s : log.periods) {
        if (s.period <= log.warmup_periods) continue;
        if (auto v = value(s)) {
            sum += *v;
            ++n;
        }
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

void record_trace(NodeTrace& trace, const RadarNode& node, const NodeStepEvents& events,
                  const WorldState& world, const SimParams& params) {
    if (trace.finished) return;
    if (!trace.target) {
        if (events.started.empty()) return;
        trace.target = events.started.front();
    }
    const TargetId j = *trace.target;
    const bool started = std::find(events.started.begin(), events.started.end(), j) != events.started.end();
    const bool retired = std::find(events.retired.begin(), events.retired.end(), j) != events.retired.end();

    if (retired) {
        TraceRow row;
        row.cpi = world.cpi;
        row.truth = world.target(j).position;
        row.estimate = trace.rows.empty() ? row.truth : trace.rows.back().estimate;
        row.flag = true;
        trace.rows.push_back(row);
        trace.finished = true;
        return;
    }
    auto it = node.tracks().find(j);
    if (it == node.tracks().end()) return;

    bool innovation_flag = false;
    for (const auto& [id, innovation] : events.innovations) {
        if (id == j && innovation >= params.d_I) innovation_flag = true;
    }
    trace.rows.push_back(TraceRow{world.cpi, world.target(j).position, it->second.position(),
                                  started || innovation_flag});
}

}  // namespace

std::optional<double> EpisodeLog::peak_age() const {
    double sum = 0.0;
    long tracks = 0;
    for (const auto& [j, series] : ages) {
        if (auto p = crn::peak_age(series)) {
            sum += *p;
            ++tracks;
        }
    }
    if (tracks == 0) return std::nullopt;
    return sum / static_cast<double>(tracks);
}

std::optional<double> EpisodeLog::steady_mean_age() const {
    return mean_over_steady(*this, [](const PeriodSample& s) { return s.mean_age; });
}

std::optional<double> EpisodeLog::steady_missed() const {
    return mean_over_steady(*this, [](const PeriodSample& s) { return std::optional<double>(s.missed); });
}

std::optional<double> EpisodeLog::steady_unobservable() const {
    return mean_over_steady(*this, [](const PeriodSample& s) { return std::optional<double>(s.unobservable); });
}

EpisodeLog run_episode(const RunConfig& config, std::uint64_t seed, NodeTrace* trace) {
    const SimParams& params = config.params;
    const MotionModel motion = MotionModel::constant_velocity(params.dt, params.q);

    Rng env_rng = make_rng(seed, Stream::Environment);
    Rng coin_rng = make_rng(seed, Stream::UpdateCoin);
    Rng strategy_rng = make_rng(seed, Stream::Strategy);
    std::vector<Rng> node_rngs;
    std::vector<RadarNode> nodes;
    node_rngs.reserve(static_cast<std::size_t>(params.M));
    nodes.reserve(static_cast<std::size_t>(params.M));
    for (int i = 0; i < params.M; ++i) {
        node_rngs.push_back(make_rng(seed, Stream::Node, static_cast<std::uint32_t>(i)));
        nodes.emplace_back(NodeId::from_index(static_cast<std::size_t>(i)));
    }
    if (trace && (trace->node.value < 1 || trace->node.value > params.M)) {
        throw Error(ErrorCode::InvalidArgument, "trace node out of range");
    }

    WorldState world;
    populate_initial(world, params, env_rng);
    FusionCenter fc(params.M);
    auto strategy = make_strategy(config.strategy, params.M, config.aoi_marginal);

    EpisodeLog log;
    log.warmup_periods = config.warmup_periods;
    log.errors = ErrorHistogram(config.thresholds);
    NodeStepEvents events;
    long period = 0;

    for (long step = 0; step < config.cpis; ++step) {
        step_environment(world, params, env_rng);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const bool traced = trace && trace->node.index() == i;
            nodes[i].cpi_step(world, params, motion, node_rngs[i], traced ? &events : nullptr);
            if (traced) record_trace(*trace, nodes[i], events, world, params);
        }
        if (!bernoulli(coin_rng, params.P_u)) continue;

        ++period;
        for (RadarNode& node : nodes) node.on_update_period(world.cpi, params);
        const AvailabilitySet availability = poll(nodes, period);
        fc.advance_to(world.cpi, params.dt);

        const SelectionInput input =
            make_selection_input(fc, availability, period, params.C, params.alpha, params.beta, params.gamma);
        const std::vector<NodeId> selected = strategy->select(input, strategy_rng);

        std::vector<NodeReport> reports;
        reports.reserve(selected.size());
        for (NodeId k : selected) {
            RadarNode& node = nodes[k.index()];
            node.clear_flag();
            reports.push_back(node.build_report(world.cpi));
        }
        const IngestOutcome outcome = fc.ingest(reports, selected, period);
        for (const NodeReport& r : reports) strategy->observe(r);

        const bool steady = period > config.warmup_periods;
        if (steady) {
            for (const auto& [j, age] : outcome.refreshed) log.ages[j].record(age);
            for (const auto& [j, err] : track_error(fc, world)) log.errors.add(err);
        }

        PeriodSample s;
        s.period = period;
        s.cpi = world.cpi;
        s.mean_age = mean_active_age(fc);
        s.missed = missed_tracks(world, fc);
        s.total_active = static_cast<int>(world.active_count());
        s.fc_tracks = static_cast<int>(fc.tracks().size());
        s.available = static_cast<int>(availability.size());
        s.unobservable = unobservable_to_network(world, nodes);
        s.selected = selected;
        log.periods.push_back(std::move(s));
    }
    return log;
}

}  // namespace crn
