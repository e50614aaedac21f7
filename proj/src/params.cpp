#include "crn/params.hpp"

#include <cmath>

namespace crn {

namespace {

void require(bool ok, const char* key, const char* what) {
    if (!ok) {
        throw Error(ErrorCode::Config, std::string(key) + ": " + what);
    }
}

void require_probability(double p, const char* key) {
    require(std::isfinite(p) && p >= 0.0 && p <= 1.0, key, "must be a probability in [0, 1]");
}

}  // namespace

void SimParams::validate() const {
    require(std::isfinite(p_s) && p_s >= 0.0, "p_s", "must be >= 0");
    require_probability(p_r, "p_r");
    require_probability(p_v, "p_v");
    require_probability(p_o, "p_o");
    require_probability(P_u, "P_u");
    require(a > 1.0, "a", "must be > 1");
    require(b > 0.0, "b", "must be > 0");
    require(alpha > 0.0 && alpha <= 1.0, "alpha", "must be in (0, 1]");
    require(std::isfinite(beta), "beta", "must be finite");
    require(std::isfinite(gamma), "gamma", "must be finite");
    require(d_I > 0.0, "d_I", "must be > 0 (inf allowed)");
    require(a_max >= 1, "a_max", "must be a positive integer");
    require(tau >= 1, "tau", "must be a positive integer");
    require(M >= 1, "M", "must be a positive integer");
    require(C >= 1, "C", "must be a positive integer");
    require(C <= M, "C", "must not exceed M");
    require(std::isfinite(N_bar) && N_bar >= 0.0, "N_bar", "must be >= 0");
    require(region.x_max > region.x_min, "region_x_max", "must exceed region_x_min");
    require(region.y_max > region.y_min, "region_y_max", "must exceed region_y_min");
    require(speed_min >= 0.0, "speed_min", "must be >= 0");
    require(speed_max >= speed_min, "speed_max", "must be >= speed_min");
    require(std::isfinite(q) && q >= 0.0, "q", "must be >= 0");
    require(std::isfinite(dt) && dt > 0.0, "dt", "must be > 0");
}

}  // namespace crn
