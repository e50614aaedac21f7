#include "crn/kalman.hpp"

#include <cmath>

namespace crn {

MotionModel MotionModel::constant_velocity(double dt, double q) {
    MotionModel m;
    m.transition = StateCov::Identity();
    m.transition(0, 2) = dt;
    m.transition(1, 3) = dt;

    const double dt2 = dt * dt;
    const double dt3 = dt2 * dt;
    m.process_noise = StateCov::Zero();
    for (int axis = 0; axis < 2; ++axis) {
        const int p = axis;
        const int v = axis + 2;
        m.process_noise(p, p) = q * dt3 / 3.0;
        m.process_noise(p, v) = q * dt2 / 2.0;
        m.process_noise(v, p) = q * dt2 / 2.0;
        m.process_noise(v, v) = q * dt;
    }
    return m;
}

MeasurementModel::MeasurementModel(double variance) : noise_variance(variance) {
    observation.setZero();
    observation(0, 0) = 1.0;
    observation(1, 1) = 1.0;
}

FilterTrack init_track(TargetId id, const Vec2& z, double sigma, long cpi, double velocity_variance) {
    if (!(sigma > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "init_track: measurement variance must be > 0");
    }
    FilterTrack t;
    t.target_id = id;
    t.state << z.x(), z.y(), 0.0, 0.0;
    t.covariance = Eigen::Vector4d(sigma, sigma, velocity_variance, velocity_variance).asDiagonal();
    t.last_update_cpi = cpi;
    return t;
}

void predict(FilterTrack& track, const MotionModel& model) {
    track.state = model.transition * track.state;
    track.covariance = model.transition * track.covariance * model.transition.transpose() + model.process_noise;
}

UpdateResult update(FilterTrack& track, const Vec2& z, const MeasurementModel& model) {
    const auto& H = model.observation;
    const Eigen::Matrix2d R = model.noise_variance * Eigen::Matrix2d::Identity();

    UpdateResult r;
    r.innovation = z - H * track.state;
    r.innovation_cov = H * track.covariance * H.transpose() + R;

    Eigen::LDLT<Eigen::Matrix2d> ldlt(r.innovation_cov);
    if (ldlt.info() != Eigen::Success || !(r.innovation_cov.determinant() > 0.0)) {
        throw Error(ErrorCode::Numerical, "update: singular innovation covariance");
    }
    const Eigen::Matrix<double, 4, 2> gain = ldlt.solve(H * track.covariance).transpose();

    track.state += gain * r.innovation;
    // Joseph form.
    const StateCov I_KH = StateCov::Identity() - gain * H;
    track.covariance = I_KH * track.covariance * I_KH.transpose() + gain * R * gain.transpose();
    track.covariance = 0.5 * (track.covariance + track.covariance.transpose()).eval();
    return r;
}

double innovation_norm(const Vec2& predicted_position, const Vec2& z) {
    return (z - predicted_position).norm();
}

double normalized_innovation_squared(const UpdateResult& r) {
    return r.innovation.dot(r.innovation_cov.ldlt().solve(r.innovation));
}

}  // namespace crn
