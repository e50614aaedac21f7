#pragma once

#include <cstdint>
#include <limits>

#include "crn/types.hpp"

namespace crn {

struct Region {
    double x_min = 0.0;
    double x_max = 5000.0;
    double y_min = 0.0;
    double y_max = 5000.0;

    bool contains(const Vec2& p) const {
        return p.x() >= x_min && p.x() <= x_max && p.y() >= y_min && p.y() <= y_max;
    }
};

/// Scenario and algorithm parameters. Defaults reproduce the reference
/// scenario: 20 mean targets, 15 nodes, update periods at 0.25 per CPI.
struct SimParams {
    double p_s = 0.1;     // new-target Poisson rate per CPI
    double p_r = 0.005;   // retirement probability per CPI
    double p_v = 0.01;    // heading-change probability per CPI
    double p_o = 0.2;     // per-node per-target observability
    double a = 2.0;       // inverse-Gamma shape
    double b = 1.0;       // inverse-Gamma scale
    double alpha = 0.01;  // discount for nodes without a raised flag
    double beta = 1.0;    // value of an unknown (node, target) pair
    double gamma = -1.0;  // penalty for a known-unobservable pair
    double d_I = 5.0;     // innovation flag threshold, m
    int a_max = 20;       // flag persistence, CPIs
    int tau = 2;          // node-side miss limit, update periods
    double P_u = 0.25;    // update-period probability per CPI
    int C = 5;            // capacity
    int M = 15;           // node count
    double N_bar = 20.0;  // mean active-target count
    Region region{};
    double speed_min = 5.0;
    double speed_max = 15.0;
    double q = 0.05;  // white-noise acceleration intensity, m^2/s^3
    double dt = 1.0;  // seconds per CPI

    /// Throws Error(Config) naming the first offending field.
    void validate() const;
};

}  // namespace crn
