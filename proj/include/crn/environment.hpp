#pragma once

#include <optional>
#include <span>
#include <vector>

#include "crn/params.hpp"
#include "crn/rng.hpp"
#include "crn/types.hpp"

namespace crn {

struct Target {
    TargetId id;
    Vec2 position = Vec2::Zero();  // m
    Vec2 velocity = Vec2::Zero();  // m/s
    long born_at = 0;
    std::optional<long> retired_at;

    bool active() const { return !retired_at.has_value(); }
};

/// Ground truth for one episode. `targets[i].id.value == i`; retired targets
/// are kept (frozen at their last position) so ids stay dense.
class WorldState {
public:
    long cpi = 0;

    const std::vector<Target>& targets() const { return targets_; }
    const Target& target(TargetId id) const { return targets_.at(id.value); }

    /// Ids of active targets, ascending.
    std::span<const TargetId> active_ids() const { return active_; }
    std::size_t active_count() const { return active_.size(); }

    /// Appends a target, assigning the next id and born_at = cpi.
    TargetId add(Vec2 position, Vec2 velocity);
    void retire(TargetId id, long at_cpi);

    // Direct mutable access for motion updates.
    Target& mutable_target(TargetId id) { return targets_.at(id.value); }

private:
    std::vector<Target> targets_;
    std::vector<TargetId> active_;
};

/// Poisson(rate) number of arrivals in one CPI.
int sample_new_target_count(Rng& rng, double rate);

/// Uniform position in the region, uniform speed in [speed_min, speed_max],
/// uniform heading. Appended to `world` at its current CPI.
TargetId spawn_target(WorldState& world, Rng& rng, const SimParams& params);

/// Advances ground truth from CPI n to n+1: move, turn (p_v), retire (p_r)
/// for every active target in id order, then spawn Poisson(p_s) arrivals.
void step_environment(WorldState& world, const SimParams& params, Rng& rng);

/// Seeds the initial population with Poisson(N_bar) targets at CPI 0,
/// the stationary count of the birth-death process.
void populate_initial(WorldState& world, const SimParams& params, Rng& rng);

}  // namespace crn
