#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crn/fusion_center.hpp"
#include "crn/rng.hpp"

namespace crn {

/// Everything a strategy may look at in one update period.
struct SelectionInput {
    long period = 1;  // t, counts update periods from 1
    int capacity = 1;
    std::vector<bool> available;  // indexed by NodeId::index(); size M
    const FcKnowledge& knowledge;
    std::vector<std::pair<TargetId, int>> tracks;  // active FC tracks with ages
    double alpha = 0.01;
    double beta = 1.0;
    double gamma = -1.0;

    int node_count() const { return static_cast<int>(available.size()); }
    bool is_available(NodeId k) const { return available.at(k.index()); }
};

/// Builds the input from the FC's current state and a poll result.
SelectionInput make_selection_input(const FusionCenter& fc, const AvailabilitySet& availability, long period,
                                    int capacity, double alpha, double beta, double gamma);

/// F_{k,j}: age / variance when k is known to see j, gamma when known not
/// to, beta when the FC has no information on the pair.
double f_value(NodeId k, TargetId j, int age, const SelectionInput& input);

/// alpha~_k times the sum of F_{k,j} over active FC tracks.
double score_node_aoi(NodeId k, const SelectionInput& input);

/// The objective is additive over nodes, so the best C-subset is the C
/// highest-scoring nodes. Ties go to the lower id. Result is ascending.
std::vector<NodeId> select_aoi(const SelectionInput& input);

/// Greedy variant that, after each pick, treats the picked node's targets
/// as refreshed (age 1) when scoring the remaining nodes.
std::vector<NodeId> select_aoi_marginal(const SelectionInput& input);

struct UcbArmState {
    std::vector<long> pulls;
    std::vector<double> mean_reward;

    explicit UcbArmState(int node_count)
        : pulls(static_cast<std::size_t>(node_count), 0), mean_reward(static_cast<std::size_t>(node_count), 0.0) {}

    /// r_k + sqrt(2 ln t / n_k); +inf for an unpulled arm.
    double index(NodeId k, long period) const;
};

/// Multi-select UCB restricted to available nodes; when fewer than C are
/// available all of them are taken and the rest filled by index over the
/// remaining nodes.
std::vector<NodeId> select_ucb(const UcbArmState& arms, const SelectionInput& input);

/// Mean of 1/(1+sigma) over the report's tracked entries; 0 for none.
double ucb_reward(const NodeReport& report);
void ucb_observe(UcbArmState& arms, NodeId k, const NodeReport& report);
void ucb_observe_reward(UcbArmState& arms, NodeId k, double reward);

/// Uniform C-subset of all nodes, ignoring availability.
std::vector<NodeId> select_random(const SelectionInput& input, Rng& rng);

enum class StrategyKind { Aoi, Ucb, Random };

std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> parse_strategy(std::string_view name);

class SelectionStrategy {
public:
    virtual ~SelectionStrategy() = default;
    virtual StrategyKind kind() const = 0;
    virtual std::vector<NodeId> select(const SelectionInput& input, Rng& rng) = 0;
    /// Called with every selected node's report after ingest.
    virtual void observe(const NodeReport& report) { (void)report; }
};

std::unique_ptr<SelectionStrategy> make_strategy(StrategyKind kind, int node_count, bool aoi_marginal = false);

}  // namespace crn
