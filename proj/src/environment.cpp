#include "crn/environment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace crn {

TargetId WorldState::add(Vec2 position, Vec2 velocity) {
    TargetId id{static_cast<std::uint32_t>(targets_.size())};
    targets_.push_back(Target{id, position, velocity, cpi, std::nullopt});
    active_.push_back(id);
    return id;
}

void WorldState::retire(TargetId id, long at_cpi) {
    Target& t = targets_.at(id.value);
    if (!t.active()) {
        throw Error(ErrorCode::Logic, "target already retired");
    }
    t.retired_at = at_cpi;
    auto it = std::lower_bound(active_.begin(), active_.end(), id);
    active_.erase(it);
}

int sample_new_target_count(Rng& rng, double rate) {
    if (rate <= 0.0) return 0;
    return std::poisson_distribution<int>(rate)(rng);
}

namespace {

Vec2 heading_vector(Rng& rng) {
    const double theta = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
    return {std::cos(theta), std::sin(theta)};
}

}  // namespace

TargetId spawn_target(WorldState& world, Rng& rng, const SimParams& params) {
    const Region& r = params.region;
    const double x = std::uniform_real_distribution<double>(r.x_min, r.x_max)(rng);
    const double y = std::uniform_real_distribution<double>(r.y_min, r.y_max)(rng);
    double speed = params.speed_min;
    if (params.speed_max > params.speed_min) {
        speed = std::uniform_real_distribution<double>(params.speed_min, params.speed_max)(rng);
    }
    return world.add(Vec2{x, y}, speed * heading_vector(rng));
}

void step_environment(WorldState& world, const SimParams& params, Rng& rng) {
    const long next = world.cpi + 1;
    std::vector<TargetId> leaving;
    for (TargetId id : world.active_ids()) {
        Target& t = world.mutable_target(id);
        t.position += t.velocity * params.dt;
        if (bernoulli(rng, params.p_v)) {
            t.velocity = t.velocity.norm() * heading_vector(rng);
        }
        if (bernoulli(rng, params.p_r)) {
            leaving.push_back(id);
        }
    }
    for (TargetId id : leaving) world.retire(id, next);

    world.cpi = next;
    const int arrivals = sample_new_target_count(rng, params.p_s);
    for (int i = 0; i < arrivals; ++i) spawn_target(world, rng, params);
}

void populate_initial(WorldState& world, const SimParams& params, Rng& rng) {
    const int count = sample_new_target_count(rng, params.N_bar);
    for (int i = 0; i < count; ++i) spawn_target(world, rng, params);
}

}  // namespace crn
