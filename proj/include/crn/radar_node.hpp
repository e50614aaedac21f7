#pragma once

#include <map>
#include <set>
#include <vector>

#include "crn/environment.hpp"
#include "crn/kalman.hpp"
#include "crn/params.hpp"
#include "crn/rng.hpp"

namespace crn {

enum class ReportStatus { Active, New, Retired };

struct ReportEntry {
    TargetId target_id;
    Vec2 predicted_position = Vec2::Zero();
    Vec2 predicted_velocity = Vec2::Zero();
    double variance = 0.0;  // sigma_{k,j}, m^2
    ReportStatus status = ReportStatus::Active;
};

struct NodeReport {
    NodeId node_id;
    long cpi = 0;
    std::vector<ReportEntry> entries;
};

/// What happened inside one node_cpi_step; reused across steps by callers
/// that want per-track detail (tracing).
struct NodeStepEvents {
    std::vector<TargetId> started;
    std::vector<TargetId> retired;
    std::vector<std::pair<TargetId, double>> innovations;  // (target, I_j)
    bool raised = false;

    void clear() {
        started.clear();
        retired.clear();
        innovations.clear();
        raised = false;
    }
};

/// Sample from inverse-Gamma(shape a, scale b) as b / Gamma(a, 1).
double sample_meas_variance(Rng& rng, double a, double b);

/// One radar node: observability partition, per-target variances and
/// filter tracks, and the interesting-update flag.
class RadarNode {
public:
    explicit RadarNode(NodeId id) : id_(id) {}

    NodeId id() const { return id_; }

    /// Classifies a newly seen target: observable with probability p_o (and
    /// a variance is drawn), unobservable otherwise. Persistent for the
    /// target's life. Throws Error(Logic) on a second classification.
    void admit_target(TargetId target, Rng& rng, const SimParams& params);

    /// Classifies as observable with a fixed variance.
    void admit_observable(TargetId target, double variance);

    /// One CPI of node processing against `world` (already advanced).
    void cpi_step(const WorldState& world, const SimParams& params, const MotionModel& motion,
                  Rng& rng, NodeStepEvents* events = nullptr);

    /// Node-side miss bookkeeping, run once per FC update period: a track
    /// without observations for tau consecutive periods is retired.
    void on_update_period(long cpi, const SimParams& params);

    /// Current estimates and variances plus retired notices. Updates only
    /// report bookkeeping (new/retired marking), never filter state.
    NodeReport build_report(long cpi);

    void clear_flag() { flag_ = false; }

    bool flag() const { return flag_; }
    int flag_age() const { return flag_age_; }
    const std::set<TargetId>& observable() const { return observable_; }
    const std::set<TargetId>& unobservable() const { return unobservable_; }
    const std::map<TargetId, double>& variances() const { return variances_; }
    const std::map<TargetId, FilterTrack>& tracks() const { return tracks_; }
    const std::map<TargetId, int>& miss_counts() const { return miss_counts_; }
    bool is_classified(TargetId target) const {
        return observable_.contains(target) || unobservable_.contains(target);
    }

private:
    void retire_track(TargetId target, NodeStepEvents* events);

    NodeId id_;
    std::set<TargetId> observable_;
    std::set<TargetId> unobservable_;
    std::map<TargetId, double> variances_;
    std::map<TargetId, FilterTrack> tracks_;
    std::map<TargetId, int> miss_counts_;
    std::set<TargetId> reported_;
    std::vector<ReportEntry> pending_retired_;
    std::uint32_t next_unclassified_ = 0;
    long last_period_cpi_ = -1;
    bool flag_ = false;
    int flag_age_ = 0;
};

}  // namespace crn
