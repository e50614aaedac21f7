#pragma once

#include <map>
#include <set>
#include <span>
#include <vector>

#include "crn/environment.hpp"
#include "crn/radar_node.hpp"

namespace crn {

struct FcTrack {
    TargetId target_id;
    Vec2 fused_position = Vec2::Zero();
    Vec2 fused_velocity = Vec2::Zero();
    long fused_cpi = 0;  // CPI the fused state refers to
    int age = 1;         // update periods since last refresh
    long created_at = 0;
    bool retired = false;
};

/// The FC's learned table of which nodes can and cannot see which targets.
/// `sees[k]` maps target -> last reported variance.
struct FcKnowledge {
    std::vector<std::map<TargetId, double>> sees;
    std::vector<std::set<TargetId>> cannot_see;

    explicit FcKnowledge(int node_count)
        : sees(static_cast<std::size_t>(node_count)), cannot_see(static_cast<std::size_t>(node_count)) {}

    int node_count() const { return static_cast<int>(sees.size()); }
    bool can_see(NodeId k, TargetId j) const { return sees.at(k.index()).contains(j); }
    bool cannot(NodeId k, TargetId j) const { return cannot_see.at(k.index()).contains(j); }
};

struct AvailabilitySet {
    long period = 0;
    std::vector<NodeId> available;  // ascending

    bool contains(NodeId k) const;
    std::size_t size() const { return available.size(); }
};

/// Reads A_k from every node; never mutates them.
AvailabilitySet poll(std::span<const RadarNode> nodes, long period);

struct IngestOutcome {
    std::vector<std::pair<TargetId, int>> refreshed;  // (track, age just before reset)
    std::vector<TargetId> created;
    std::vector<TargetId> retired;
};

class FusionCenter {
public:
    explicit FusionCenter(int node_count) : knowledge_(node_count) {}

    /// Dead-reckons every active track to `cpi` along its fused velocity.
    void advance_to(long cpi, double dt);

    /// Applies one update period's reports from the selected set. Reports
    /// are processed in ascending node id regardless of input order. Throws
    /// Error(Protocol) for a report from an unselected node or a duplicate.
    IngestOutcome ingest(std::span<const NodeReport> reports, std::span<const NodeId> selected, long period);

    const std::map<TargetId, FcTrack>& tracks() const { return tracks_; }
    const FcKnowledge& knowledge() const { return knowledge_; }
    bool was_retired(TargetId j) const { return retired_.contains(j); }

private:
    void retire(TargetId j);

    FcKnowledge knowledge_;
    std::map<TargetId, FcTrack> tracks_;  // active tracks only (N-hat)
    std::set<TargetId> retired_;
};

/// Position error of every active FC track whose target is still alive.
std::map<TargetId, double> track_error(const FusionCenter& fc, const WorldState& world);

}  // namespace crn
