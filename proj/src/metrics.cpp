#include "crn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace crn {

std::optional<double> peak_age(const AgeSeries& series) {
    if (series.ages_at_update.empty()) return std::nullopt;
    const double sum = std::accumulate(series.ages_at_update.begin(), series.ages_at_update.end(), 0.0);
    return sum / static_cast<double>(series.ages_at_update.size());
}

std::optional<double> mean_active_age(const FusionCenter& fc) {
    if (fc.tracks().empty()) return std::nullopt;
    double sum = 0.0;
    for (const auto& [j, track] : fc.tracks()) sum += track.age;
    return sum / static_cast<double>(fc.tracks().size());
}

std::vector<double> error_cdf(std::span<const double> errors, std::span<const double> thresholds) {
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw Error(ErrorCode::InvalidArgument, "error_cdf: thresholds must be ascending");
    }
    std::vector<double> sorted(errors.begin(), errors.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    out.reserve(thresholds.size());
    for (double th : thresholds) {
        if (sorted.empty()) {
            out.push_back(0.0);
            continue;
        }
        const auto n = std::upper_bound(sorted.begin(), sorted.end(), th) - sorted.begin();
        out.push_back(static_cast<double>(n) / static_cast<double>(sorted.size()));
    }
    return out;
}

int missed_tracks(const WorldState& world, const FusionCenter& fc) {
    int missed = 0;
    for (TargetId id : world.active_ids()) {
        if (!fc.tracks().contains(id)) ++missed;
    }
    return missed;
}

double expected_unobservable(double N_bar, double p_o, int M) {
    return N_bar * std::pow(1.0 - p_o, M);
}

int unobservable_to_network(const WorldState& world, std::span<const RadarNode> nodes) {
    int count = 0;
    for (TargetId id : world.active_ids()) {
        const bool hidden = std::all_of(nodes.begin(), nodes.end(),
                                        [&](const RadarNode& n) { return n.unobservable().contains(id); });
        if (hidden) ++count;
    }
    return count;
}

ErrorHistogram::ErrorHistogram(std::vector<double> thresholds)
    : thresholds_(std::move(thresholds)), bin_counts_(thresholds_.size(), 0) {
    if (!std::is_sorted(thresholds_.begin(), thresholds_.end())) {
        throw Error(ErrorCode::InvalidArgument, "ErrorHistogram: thresholds must be ascending");
    }
}

void ErrorHistogram::add(double error) {
    ++total_;
    // Binned by the first threshold >= error; fractions() accumulates.
    const auto first = std::lower_bound(thresholds_.begin(), thresholds_.end(), error);
    if (first != thresholds_.end()) ++bin_counts_[static_cast<std::size_t>(first - thresholds_.begin())];
}

void ErrorHistogram::merge(const ErrorHistogram& other) {
    if (thresholds_.empty() && total_ == 0) {
        *this = other;
        return;
    }
    if (other.thresholds_ != thresholds_) {
        throw Error(ErrorCode::InvalidArgument, "ErrorHistogram: threshold grids differ");
    }
    for (std::size_t i = 0; i < bin_counts_.size(); ++i) bin_counts_[i] += other.bin_counts_[i];
    total_ += other.total_;
}

std::vector<double> ErrorHistogram::fractions() const {
    std::vector<double> out(thresholds_.size(), 0.0);
    if (total_ == 0) return out;
    long running = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        running += bin_counts_[i];
        out[i] = static_cast<double>(running) / static_cast<double>(total_);
    }
    return out;
}

std::vector<double> threshold_grid(double lo, double hi, int count) {
    std::vector<double> grid;
    if (count <= 0) return grid;
    if (count == 1) return {lo};
    grid.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) grid.push_back(lo + (hi - lo) * i / (count - 1));
    return grid;
}

}  // namespace crn
