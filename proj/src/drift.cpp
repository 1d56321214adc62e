#include "airel/drift.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "airel/numeric.hpp"

namespace airel::drift {

namespace {

// Sup distance between empirical CDFs of two sorted samples by merge walk.
double ks_sorted(const std::vector<double>& a, const std::vector<double>& b) {
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

}  // namespace

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw Error(Errc::empty_input, "KS statistic needs two samples");
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return ks_sorted(sa, sb);
}

double ks_threshold(std::size_t m, std::size_t n, double alpha) {
    if (!(alpha > 0 && alpha < 1)) throw Error(Errc::bad_alpha, "alpha outside (0,1)");
    if (m == 0 || n == 0) throw Error(Errc::empty_input, "KS threshold needs two sample sizes");
    double c = std::sqrt(-std::log(alpha / 2) / 2);
    double md = static_cast<double>(m), nd = static_cast<double>(n);
    return c * std::sqrt((md + nd) / (md * nd));
}

std::optional<Detection> detect_drift(std::span<const double> reference,
                                      std::span<const double> stream, std::size_t window,
                                      double alpha) {
    if (window < 20) throw Error(Errc::window_too_small, "drift window must be >= 20 samples");
    if (reference.size() < 20)
        throw Error(Errc::window_too_small, "drift reference must hold >= 20 samples");
    if (!(alpha > 0 && alpha < 1)) throw Error(Errc::bad_alpha, "alpha outside (0,1)");
    if (stream.size() < window) return std::nullopt;

    std::vector<double> ref(reference.begin(), reference.end());
    std::sort(ref.begin(), ref.end());
    const double threshold = ks_threshold(reference.size(), window, alpha);

    std::vector<double> win(window);
    for (std::size_t end = window; end <= stream.size(); ++end) {
        std::copy(stream.begin() + static_cast<std::ptrdiff_t>(end - window),
                  stream.begin() + static_cast<std::ptrdiff_t>(end), win.begin());
        std::sort(win.begin(), win.end());
        double d = ks_sorted(ref, win);
        if (d > threshold) return Detection{end, d, threshold};
    }
    return std::nullopt;
}

double mttd_estimate(std::span<const double> detection_times) {
    if (detection_times.empty())
        throw Error(Errc::empty_input, "MTTD needs at least one detection time");
    for (double t : detection_times)
        if (t < 0) throw Error(Errc::negative_input, "detection times must be non-negative");
    return numeric::mean(detection_times);
}

}  // namespace airel::drift
