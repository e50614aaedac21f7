#include <cmath>

#include "doctest.h"

#include "crn/metrics.hpp"

using namespace crn;

namespace {

ReportEntry entry(std::uint32_t j) {
    ReportEntry e;
    e.target_id = TargetId{j};
    e.variance = 1.0;
    return e;
}

}  // namespace

TEST_CASE("peak_age") {
    AgeSeries s;
    CHECK_FALSE(peak_age(s).has_value());
    for (int a : {1, 3, 5}) s.record(a);
    CHECK(peak_age(s) == doctest::Approx(3.0));
    CHECK(s.refreshes() == 3);
}

TEST_CASE("mean_active_age") {
    FusionCenter fc(2);
    CHECK_FALSE(mean_active_age(fc).has_value());

    const std::vector<NodeId> one{NodeId{1}}, two{NodeId{2}};
    fc.ingest(std::vector<NodeReport>{NodeReport{NodeId{1}, 0, {entry(0)}}}, one, 1);
    fc.ingest(std::vector<NodeReport>{NodeReport{NodeId{2}, 0, {}}}, two, 2);
    fc.ingest(std::vector<NodeReport>{NodeReport{NodeId{2}, 0, {entry(1)}}}, two, 3);
    // Track 0 has age 3 (unreported in two periods), track 1 is fresh.
    CHECK(fc.tracks().at(TargetId{0}).age == 3);
    CHECK(mean_active_age(fc) == doctest::Approx(2.0));
}

TEST_CASE("error_cdf") {
    const std::vector<double> errors{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> thresholds{0.5, 2.0, 2.5, 10.0};
    CHECK(error_cdf(errors, thresholds) == std::vector<double>{0.0, 0.5, 0.5, 1.0});
    CHECK(error_cdf({}, thresholds) == std::vector<double>(4, 0.0));

    const std::vector<double> bad{2.0, 1.0};
    CHECK_THROWS_AS(error_cdf(errors, bad), Error);
}

TEST_CASE("error histogram agrees with direct cdf") {
    Rng rng = make_rng(61, Stream::Measurement);
    std::exponential_distribution<double> d(0.2);
    const auto grid = threshold_grid(0.0, 30.0, 60);
    ErrorHistogram a(grid), b(grid), whole(grid);
    std::vector<double> all;
    for (int i = 0; i < 5000; ++i) {
        const double e = d(rng);
        all.push_back(e);
        (i % 3 == 0 ? a : b).add(e);
        whole.add(e);
    }
    // Exact threshold hits count as <=.
    for (double th : {0.0, grid[7], 30.0}) {
        all.push_back(th);
        a.add(th);
        whole.add(th);
    }
    ErrorHistogram merged;
    merged.merge(b);
    merged.merge(a);
    const auto direct = error_cdf(all, grid);
    CHECK(whole.fractions() == direct);
    CHECK(merged.fractions() == direct);
    CHECK(merged.samples() == static_cast<long>(all.size()));

    const auto f = whole.fractions();
    for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i] >= f[i - 1]);
    CHECK_THROWS_AS(a.merge(ErrorHistogram(threshold_grid(0.0, 10.0, 5))), Error);
}

TEST_CASE("threshold_grid") {
    const auto g = threshold_grid(0.0, 30.0, 60);
    REQUIRE(g.size() == 60);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 30.0);
    CHECK(g[1] == doctest::Approx(30.0 / 59.0));
    CHECK(threshold_grid(1.0, 2.0, 1) == std::vector<double>{1.0});
    CHECK(threshold_grid(1.0, 2.0, 0).empty());
}

TEST_CASE("missed_tracks") {
    WorldState world;
    for (int i = 0; i < 4; ++i) world.add(Vec2::Zero(), Vec2::Zero());
    world.retire(TargetId{3}, 0);
    FusionCenter fc(1);
    CHECK(missed_tracks(world, fc) == 3);
    const std::vector<NodeId> sel{NodeId{1}};
    fc.ingest(std::vector<NodeReport>{NodeReport{NodeId{1}, 0, {entry(0), entry(2)}}}, sel, 1);
    CHECK(missed_tracks(world, fc) == 1);
}

TEST_CASE("expected_unobservable") {
    CHECK(expected_unobservable(20.0, 0.2, 15) == doctest::Approx(0.70368744).epsilon(1e-7));
    CHECK(expected_unobservable(20.0, 1.0, 15) == 0.0);
    CHECK(expected_unobservable(20.0, 0.0, 15) == 20.0);
}

TEST_CASE("unobservable fraction matches (1 - p_o)^M") {
    SimParams p;
    Rng rng = make_rng(62, Stream::Node);
    const int m = 15, n = 200000;
    std::vector<RadarNode> nodes;
    for (int k = 1; k <= m; ++k) nodes.emplace_back(NodeId{k});
    WorldState world;
    for (int i = 0; i < n; ++i) {
        const TargetId id = world.add(Vec2::Zero(), Vec2::Zero());
        for (auto& node : nodes) node.admit_target(id, rng, p);
    }
    const double expected = std::pow(1.0 - p.p_o, m);
    const double frac = static_cast<double>(unobservable_to_network(world, nodes)) / n;
    const double se = std::sqrt(expected * (1.0 - expected) / n);
    CHECK(std::abs(frac - expected) <= 3.0 * se);
}
