#include "crn/fusion_center.hpp"

#include <algorithm>

namespace crn {

bool AvailabilitySet::contains(NodeId k) const {
    return std::binary_search(available.begin(), available.end(), k);
}

AvailabilitySet poll(std::span<const RadarNode> nodes, long period) {
    AvailabilitySet set;
    set.period = period;
    for (const RadarNode& node : nodes) {
        if (node.flag()) set.available.push_back(node.id());
    }
    std::sort(set.available.begin(), set.available.end());
    return set;
}

void FusionCenter::advance_to(long cpi, double dt) {
    for (auto& [id, track] : tracks_) {
        const double elapsed = static_cast<double>(cpi - track.fused_cpi) * dt;
        track.fused_position += track.fused_velocity * elapsed;
        track.fused_cpi = cpi;
    }
}

void FusionCenter::retire(TargetId j) {
    tracks_.erase(j);
    retired_.insert(j);
    for (auto& s : knowledge_.sees) s.erase(j);
    for (auto& s : knowledge_.cannot_see) s.erase(j);
}

IngestOutcome FusionCenter::ingest(std::span<const NodeReport> reports, std::span<const NodeId> selected,
                                   long period) {
    std::vector<const NodeReport*> ordered;
    ordered.reserve(reports.size());
    for (const NodeReport& r : reports) {
        if (std::find(selected.begin(), selected.end(), r.node_id) == selected.end()) {
            throw Error(ErrorCode::Protocol,
                        "ingest: report from unselected node " + std::to_string(r.node_id.value));
        }
        if (r.node_id.value < 1 || r.node_id.value > knowledge_.node_count()) {
            throw Error(ErrorCode::Protocol, "ingest: node id out of range");
        }
        ordered.push_back(&r);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const NodeReport* x, const NodeReport* y) { return x->node_id < y->node_id; });
    for (std::size_t i = 1; i < ordered.size(); ++i) {
        if (ordered[i]->node_id == ordered[i - 1]->node_id) {
            throw Error(ErrorCode::Protocol,
                        "ingest: duplicate report from node " + std::to_string(ordered[i]->node_id.value));
        }
    }

    struct Accum {
        Vec2 position = Vec2::Zero();
        Vec2 velocity = Vec2::Zero();
        int count = 0;
        long cpi = 0;
        bool retired = false;
    };
    std::map<TargetId, Accum> seen;

    // Knowledge: reported targets join sees[k]; retirements leave it.
    for (const NodeReport* r : ordered) {
        auto& sees = knowledge_.sees[r->node_id.index()];
        auto& cannot = knowledge_.cannot_see[r->node_id.index()];
        for (const ReportEntry& e : r->entries) {
            Accum& acc = seen[e.target_id];
            if (e.status == ReportStatus::Retired) {
                acc.retired = true;
                sees.erase(e.target_id);
                continue;
            }
            sees[e.target_id] = e.variance;
            cannot.erase(e.target_id);
            acc.position += e.predicted_position;
            acc.velocity += e.predicted_velocity;
            acc.cpi = r->cpi;
            ++acc.count;
        }
    }

    IngestOutcome out;
    std::set<TargetId> updated;
    for (auto& [j, acc] : seen) {
        if (acc.retired) {
            if (tracks_.contains(j)) out.retired.push_back(j);
            retire(j);
            continue;
        }
        if (acc.count == 0 || retired_.contains(j)) continue;

        const Vec2 position = acc.position / acc.count;
        const Vec2 velocity = acc.velocity / acc.count;
        auto it = tracks_.find(j);
        if (it == tracks_.end()) {
            FcTrack t;
            t.target_id = j;
            t.fused_position = position;
            t.fused_velocity = velocity;
            t.fused_cpi = acc.cpi;
            t.age = 1;
            t.created_at = period;
            tracks_.emplace(j, t);
            out.created.push_back(j);
        } else {
            FcTrack& t = it->second;
            out.refreshed.emplace_back(j, t.age);
            t.fused_position = position;
            t.fused_velocity = velocity;
            t.fused_cpi = acc.cpi;
        }
        updated.insert(j);
    }

    // A node's report enumerates all of its tracks, so an FC-known target
    // missing from it is one the node cannot see.
    for (const NodeReport* r : ordered) {
        const auto& sees = knowledge_.sees[r->node_id.index()];
        auto& cannot = knowledge_.cannot_see[r->node_id.index()];
        for (const auto& [j, track] : tracks_) {
            if (!sees.contains(j)) cannot.insert(j);
        }
    }

    // Refreshed or created -> 1, everything else ticks by one.
    for (auto& [j, track] : tracks_) {
        if (updated.contains(j)) {
            track.age = 1;
        } else {
            ++track.age;
        }
    }
    return out;
}

std::map<TargetId, double> track_error(const FusionCenter& fc, const WorldState& world) {
    std::map<TargetId, double> errors;
    for (const auto& [j, track] : fc.tracks()) {
        if (j.value >= world.targets().size()) continue;
        const Target& truth = world.target(j);
        if (!truth.active()) continue;
        errors.emplace(j, (track.fused_position - truth.position).norm());
    }
    return errors;
}

}  // namespace crn
