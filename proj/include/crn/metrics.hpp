#pragma once

#include <optional>
#include <span>
#include <vector>

#include "crn/environment.hpp"
#include "crn/fusion_center.hpp"
#include "crn/radar_node.hpp"

namespace crn {

/// Ages-at-update A_n for one FC track: the age held in the period just
/// before each refresh.
struct AgeSeries {
    std::vector<int> ages_at_update;

    void record(int age) { ages_at_update.push_back(age); }
    std::size_t refreshes() const { return ages_at_update.size(); }
};

/// Mean of A_n; nullopt for a track never refreshed.
std::optional<double> peak_age(const AgeSeries& series);

/// Mean age over active FC tracks; nullopt when there are none.
std::optional<double> mean_active_age(const FusionCenter& fc);

/// Fraction of error samples <= each threshold. Thresholds must ascend.
std::vector<double> error_cdf(std::span<const double> errors, std::span<const double> thresholds);

/// Active true targets without an active FC track.
int missed_tracks(const WorldState& world, const FusionCenter& fc);

/// N_bar (1 - p_o)^M, the expected count of targets no node can see.
double expected_unobservable(double N_bar, double p_o, int M);

/// Active targets classified unobservable by every node.
int unobservable_to_network(const WorldState& world, std::span<const RadarNode> nodes);

/// Threshold counts for an error CDF. Merging is associative and
/// commutative, so pooled results do not depend on episode order.
class ErrorHistogram {
public:
    ErrorHistogram() = default;
    explicit ErrorHistogram(std::vector<double> thresholds);

    void add(double error);
    void merge(const ErrorHistogram& other);

    std::vector<double> fractions() const;
    const std::vector<double>& thresholds() const { return thresholds_; }
    long samples() const { return total_; }

private:
    std::vector<double> thresholds_;
    std::vector<long> bin_counts_;
    long total_ = 0;
};

/// Evenly spaced grid with `count` points from `lo` to `hi` inclusive.
std::vector<double> threshold_grid(double lo, double hi, int count);

}  // namespace crn
