#pragma once

#include <Eigen/Dense>

#include "crn/types.hpp"

namespace crn {

using StateVec = Eigen::Vector4d;  // [x, y, vx, vy]
using StateCov = Eigen::Matrix4d;

/// Initial velocity variance for single-observation track starts, (m/s)^2.
inline constexpr double kInitialVelocityVariance = 100.0;

struct FilterTrack {
    TargetId target_id;
    StateVec state = StateVec::Zero();
    StateCov covariance = StateCov::Zero();
    long last_update_cpi = 0;

    Vec2 position() const { return state.head<2>(); }
    Vec2 velocity() const { return state.tail<2>(); }
};

/// 2D constant velocity with white-noise acceleration of intensity q.
struct MotionModel {
    StateCov transition;
    StateCov process_noise;

    static MotionModel constant_velocity(double dt, double q);
};

/// Position-only observation with isotropic variance (m^2 per axis).
struct MeasurementModel {
    Eigen::Matrix<double, 2, 4> observation;
    double noise_variance;

    explicit MeasurementModel(double variance);
};

struct UpdateResult {
    Vec2 innovation;
    Eigen::Matrix2d innovation_cov;
};

FilterTrack init_track(TargetId id, const Vec2& z, double sigma, long cpi,
                       double velocity_variance = kInitialVelocityVariance);

void predict(FilterTrack& track, const MotionModel& model);

/// Standard gain update; the covariance is re-symmetrized afterwards.
UpdateResult update(FilterTrack& track, const Vec2& z, const MeasurementModel& model);

double innovation_norm(const Vec2& predicted_position, const Vec2& z);

/// Normalized innovation squared, nu^T S^-1 nu.
double normalized_innovation_squared(const UpdateResult& r);

}  // namespace crn
