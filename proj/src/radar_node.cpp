#include "crn/radar_node.hpp"

#include <cmath>

namespace crn {

double sample_meas_variance(Rng& rng, double a, double b) {
    const double g = std::gamma_distribution<double>(a, 1.0)(rng);
    return b / g;
}

void RadarNode::admit_target(TargetId target, Rng& rng, const SimParams& params) {
    if (is_classified(target)) {
        throw Error(ErrorCode::Logic, "admit_target: target already classified by node");
    }
    if (bernoulli(rng, params.p_o)) {
        admit_observable(target, sample_meas_variance(rng, params.a, params.b));
    } else {
        unobservable_.insert(target);
    }
}

void RadarNode::admit_observable(TargetId target, double variance) {
    if (is_classified(target)) {
        throw Error(ErrorCode::Logic, "admit_observable: target already classified by node");
    }
    if (!(variance > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "admit_observable: variance must be > 0");
    }
    observable_.insert(target);
    variances_.emplace(target, variance);
}

void RadarNode::retire_track(TargetId target, NodeStepEvents* events) {
    auto it = tracks_.find(target);
    if (it != tracks_.end()) {
        ReportEntry notice;
        notice.target_id = target;
        notice.predicted_position = it->second.position();
        notice.predicted_velocity = it->second.velocity();
        notice.variance = variances_.at(target);
        notice.status = ReportStatus::Retired;
        pending_retired_.push_back(notice);
        tracks_.erase(it);
        if (events) events->retired.push_back(target);
    }
    observable_.erase(target);
    variances_.erase(target);
    miss_counts_.erase(target);
}

void RadarNode::cpi_step(const WorldState& world, const SimParams& params, const MotionModel& motion,
                         Rng& rng, NodeStepEvents* events) {
    if (events) events->clear();

    // Targets that entered since the last step.
    for (TargetId id : world.active_ids()) {
        if (id.value < next_unclassified_) continue;
        if (!is_classified(id)) admit_target(id, rng, params);
    }
    next_unclassified_ = static_cast<std::uint32_t>(world.targets().size());

    // N_ret: observability is persistent, so a tracked target with no
    // observation has left the scene.
    std::size_t retired = 0;
    for (auto it = observable_.begin(); it != observable_.end();) {
        const TargetId id = *it++;
        if (!world.target(id).active()) {
            if (tracks_.contains(id)) ++retired;
            retire_track(id, events);
        }
    }
    std::erase_if(unobservable_, [&](TargetId id) { return !world.target(id).active(); });

    std::size_t started = 0;
    bool innovation_trigger = false;
    for (TargetId id : observable_) {
        const Vec2& truth = world.target(id).position;
        const double sigma = variances_.at(id);
        std::normal_distribution<double> noise(0.0, std::sqrt(sigma));
        const double nx = noise(rng);
        const double ny = noise(rng);
        const Vec2 z = truth + Vec2{nx, ny};

        auto it = tracks_.find(id);
        if (it == tracks_.end()) {
            tracks_.emplace(id, init_track(id, z, sigma, world.cpi));
            miss_counts_[id] = 0;
            ++started;
            if (events) events->started.push_back(id);
            continue;
        }
        FilterTrack& track = it->second;
        predict(track, motion);
        const double innovation = innovation_norm(track.position(), z);
        update(track, z, MeasurementModel(sigma));
        track.last_update_cpi = world.cpi;
        if (innovation >= params.d_I) innovation_trigger = true;
        if (events) events->innovations.emplace_back(id, innovation);
    }

    const bool trigger = innovation_trigger || started > 0 || retired > 0;
    if (trigger) {
        flag_ = true;
        flag_age_ = 1;
    } else if (flag_) {
        ++flag_age_;
    }
    if (flag_ && flag_age_ > params.a_max) flag_ = false;
    if (events) events->raised = trigger;
}

void RadarNode::on_update_period(long cpi, const SimParams& params) {
    std::vector<TargetId> stale;
    for (auto& [id, track] : tracks_) {
        int& misses = miss_counts_[id];
        if (track.last_update_cpi <= last_period_cpi_) {
            ++misses;
        } else {
            misses = 0;
        }
        if (misses >= params.tau) stale.push_back(id);
    }
    for (TargetId id : stale) retire_track(id, nullptr);
    last_period_cpi_ = cpi;
}

NodeReport RadarNode::build_report(long cpi) {
    NodeReport report;
    report.node_id = id_;
    report.cpi = cpi;
    report.entries.reserve(tracks_.size() + pending_retired_.size());
    for (const auto& [id, track] : tracks_) {
        ReportEntry e;
        e.target_id = id;
        e.predicted_position = track.position();
        e.predicted_velocity = track.velocity();
        e.variance = variances_.at(id);
        e.status = reported_.insert(id).second ? ReportStatus::New : ReportStatus::Active;
        report.entries.push_back(e);
    }
    for (const ReportEntry& notice : pending_retired_) {
        reported_.erase(notice.target_id);
        report.entries.push_back(notice);
    }
    pending_retired_.clear();
    return report;
}

}  // namespace crn
