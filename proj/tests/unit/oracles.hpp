#pragma once

// Independent reference computations used only by tests.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

/// Calls fn(subset) for every k-subset of {0..n-1}, subsets in lexicographic order.
inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

/// Largest sum of `values` over all k-subsets, by enumeration.
inline double best_subset_sum(const std::vector<double>& values, int k) {
    double best = -INFINITY;
    for_each_subset(static_cast<int>(values.size()), k, [&](const std::vector<int>& s) {
        double sum = 0.0;
        for (int i : s) sum += values[static_cast<std::size_t>(i)];
        best = std::max(best, sum);
    });
    return best;
}

/// CDF of Gamma(shape 2, scale 1): 1 - e^{-x}(1 + x).
inline double gamma2_cdf(double x) { return 1.0 - std::exp(-x) * (1.0 + x); }

/// Median of inverse-Gamma(2, b) = b / median(Gamma(2, 1)), by bisection.
inline double inverse_gamma2_median(double b) {
    double lo = 0.0, hi = 20.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (gamma2_cdf(mid) < 0.5 ? lo : hi) = mid;
    }
    return b / (0.5 * (lo + hi));
}

/// Two-sided 99% normal quantile.
inline constexpr double z99 = 2.5758293035489004;

}  // namespace oracle
