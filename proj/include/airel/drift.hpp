#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "airel/errors.hpp"

namespace airel::drift {

// Two-sample Kolmogorov-Smirnov statistic: sup |F_a - F_b| over the pooled
// sample. Both sides must be non-empty.
double ks_statistic(std::span<const double> a, std::span<const double> b);

// Asymptotic two-sample threshold at level alpha for sizes m and n:
// sqrt(-ln(alpha/2)/2) * sqrt((m+n)/(m*n)).
double ks_threshold(std::size_t m, std::size_t n, double alpha);

struct Detection {
    // 1-based count of stream samples consumed when the window fired; the
    // fired window is the trailing `window` samples ending here. Always at
    // least the window length.
    std::size_t index = 0;
    double statistic = 0;
    double threshold = 0;
};

// Slides a window of size `window` over the stream in steps of one sample
// and fires at the first window whose KS distance from the reference exceeds
// the threshold. Requires window >= 20 and reference size >= 20.
std::optional<Detection> detect_drift(std::span<const double> reference,
                                      std::span<const double> stream, std::size_t window,
                                      double alpha);

// Mean of observed detection-time samples.
double mttd_estimate(std::span<const double> detection_times);

}  // namespace airel::drift
