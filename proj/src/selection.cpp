#include "crn/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace crn {

SelectionInput make_selection_input(const FusionCenter& fc, const AvailabilitySet& availability, long period,
                                    int capacity, double alpha, double beta, double gamma) {
    const int m = fc.knowledge().node_count();
    SelectionInput input{period, capacity, std::vector<bool>(static_cast<std::size_t>(m), false),
                         fc.knowledge(), {}, alpha, beta, gamma};
    for (NodeId k : availability.available) input.available.at(k.index()) = true;
    input.tracks.reserve(fc.tracks().size());
    for (const auto& [j, track] : fc.tracks()) input.tracks.emplace_back(j, track.age);
    return input;
}

double f_value(NodeId k, TargetId j, int age, const SelectionInput& input) {
    const auto& sees = input.knowledge.sees.at(k.index());
    if (auto it = sees.find(j); it != sees.end()) {
        if (!(it->second > 0.0)) {
            throw Error(ErrorCode::Logic, "f_value: non-positive variance for known pair");
        }
        return static_cast<double>(age) / it->second;
    }
    if (input.knowledge.cannot(k, j)) return input.gamma;
    return input.beta;
}

double score_node_aoi(NodeId k, const SelectionInput& input) {
    double sum = 0.0;
    for (const auto& [j, age] : input.tracks) sum += f_value(k, j, age, input);
    return (input.is_available(k) ? 1.0 : input.alpha) * sum;
}

namespace {

/// Indices of the `count` largest values, ties to the lower index, result ascending.
std::vector<NodeId> top_by_value(const std::vector<double>& values, const std::vector<std::size_t>& candidates,
                                 std::size_t count) {
    std::vector<std::size_t> order = candidates;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
    order.resize(std::min(count, order.size()));
    std::sort(order.begin(), order.end());
    std::vector<NodeId> out;
    out.reserve(order.size());
    for (std::size_t i : order) out.push_back(NodeId::from_index(i));
    return out;
}

std::vector<std::size_t> all_indices(int n) {
    std::vector<std::size_t> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

std::size_t capacity_of(const SelectionInput& input) {
    return static_cast<std::size_t>(std::clamp(input.capacity, 0, input.node_count()));
}

}  // namespace

std::vector<NodeId> select_aoi(const SelectionInput& input) {
    const int m = input.node_count();
    std::vector<double> scores(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) scores[static_cast<std::size_t>(i)] = score_node_aoi(NodeId::from_index(i), input);
    return top_by_value(scores, all_indices(m), capacity_of(input));
}

std::vector<NodeId> select_aoi_marginal(const SelectionInput& input) {
    const int m = input.node_count();
    const std::size_t c = capacity_of(input);
    std::vector<bool> taken(static_cast<std::size_t>(m), false);
    std::vector<std::pair<TargetId, int>> tracks = input.tracks;
    std::vector<NodeId> picked;

    while (picked.size() < c) {
        SelectionInput view{input.period, input.capacity, input.available, input.knowledge, tracks,
                            input.alpha, input.beta, input.gamma};
        double best = -std::numeric_limits<double>::infinity();
        int best_index = -1;
        for (int i = 0; i < m; ++i) {
            if (taken[static_cast<std::size_t>(i)]) continue;
            const double s = score_node_aoi(NodeId::from_index(i), view);
            if (s > best) {
                best = s;
                best_index = i;
            }
        }
        const NodeId k = NodeId::from_index(static_cast<std::size_t>(best_index));
        taken[k.index()] = true;
        picked.push_back(k);
        for (auto& [j, age] : tracks) {
            if (input.knowledge.can_see(k, j)) age = 1;
        }
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

double UcbArmState::index(NodeId k, long period) const {
    const long n = pulls.at(k.index());
    if (n == 0) return std::numeric_limits<double>::infinity();
    const double t = static_cast<double>(std::max<long>(period, 1));
    return mean_reward[k.index()] + std::sqrt(2.0 * std::log(t) / static_cast<double>(n));
}

std::vector<NodeId> select_ucb(const UcbArmState& arms, const SelectionInput& input) {
    const int m = input.node_count();
    const std::size_t c = capacity_of(input);
    std::vector<double> index(static_cast<std::size_t>(m));
    std::vector<std::size_t> available;
    std::vector<std::size_t> rest;
    for (int i = 0; i < m; ++i) {
        const NodeId k = NodeId::from_index(static_cast<std::size_t>(i));
        index[static_cast<std::size_t>(i)] = arms.index(k, input.period);
        (input.is_available(k) ? available : rest).push_back(static_cast<std::size_t>(i));
    }

    if (available.size() >= c) return top_by_value(index, available, c);

    std::vector<NodeId> out;
    for (std::size_t i : available) out.push_back(NodeId::from_index(i));
    for (NodeId k : top_by_value(index, rest, c - available.size())) out.push_back(k);
    std::sort(out.begin(), out.end());
    return out;
}

double ucb_reward(const NodeReport& report) {
    double sum = 0.0;
    int n = 0;
    for (const ReportEntry& e : report.entries) {
        if (e.status == ReportStatus::Retired) continue;
        sum += 1.0 / (1.0 + e.variance);
        ++n;
    }
    return n == 0 ? 0.0 : sum / n;
}

void ucb_observe_reward(UcbArmState& arms, NodeId k, double reward) {
    const std::size_t i = k.index();
    const long n = ++arms.pulls.at(i);
    arms.mean_reward[i] += (reward - arms.mean_reward[i]) / static_cast<double>(n);
}

void ucb_observe(UcbArmState& arms, NodeId k, const NodeReport& report) {
    ucb_observe_reward(arms, k, ucb_reward(report));
}

std::vector<NodeId> select_random(const SelectionInput& input, Rng& rng) {
    const std::vector<std::size_t> all = all_indices(input.node_count());
    std::vector<std::size_t> chosen;
    std::sample(all.begin(), all.end(), std::back_inserter(chosen), capacity_of(input), rng);
    std::vector<NodeId> out;
    out.reserve(chosen.size());
    for (std::size_t i : chosen) out.push_back(NodeId::from_index(i));
    return out;
}

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Aoi: return "aoi";
        case StrategyKind::Ucb: return "ucb";
        case StrategyKind::Random: return "random";
    }
    return "unknown";
}

std::optional<StrategyKind> parse_strategy(std::string_view name) {
    if (name == "aoi") return StrategyKind::Aoi;
    if (name == "ucb") return StrategyKind::Ucb;
    if (name == "random") return StrategyKind::Random;
    return std::nullopt;
}

namespace {

class AoiStrategy final : public SelectionStrategy {
public:
    explicit AoiStrategy(bool marginal) : marginal_(marginal) {}
    StrategyKind kind() const override { return StrategyKind::Aoi; }
    std::vector<NodeId> select(const SelectionInput& input, Rng&) override {
        return marginal_ ? select_aoi_marginal(input) : select_aoi(input);
    }

private:
    bool marginal_;
};

class UcbStrategy final : public SelectionStrategy {
public:
    explicit UcbStrategy(int node_count) : arms_(node_count) {}
    StrategyKind kind() const override { return StrategyKind::Ucb; }
    std::vector<NodeId> select(const SelectionInput& input, Rng&) override { return select_ucb(arms_, input); }
    void observe(const NodeReport& report) override { ucb_observe(arms_, report.node_id, report); }

private:
    UcbArmState arms_;
};

class RandomStrategy final : public SelectionStrategy {
public:
    StrategyKind kind() const override { return StrategyKind::Random; }
    std::vector<NodeId> select(const SelectionInput& input, Rng& rng) override { return select_random(input, rng); }
};

}  // namespace

std::unique_ptr<SelectionStrategy> make_strategy(StrategyKind kind, int node_count, bool aoi_marginal) {
    switch (kind) {
        case StrategyKind::Aoi: return std::make_unique<AoiStrategy>(aoi_marginal);
        case StrategyKind::Ucb: return std::make_unique<UcbStrategy>(node_count);
        case StrategyKind::Random: return std::make_unique<RandomStrategy>();
    }
    throw Error(ErrorCode::InvalidArgument, "unknown strategy");
}

}  // namespace crn
