#include "rootflow/histogram.hpp"

#include "rootflow/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rootflow {

Histogram histogram(const std::vector<double>& values, int bins) {
    if (values.empty()) throw std::invalid_argument("histogram: empty input");
    if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");

    const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    double lo = *mn_it;
    double hi = *mx_it;
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / bins;

    Histogram h;
    h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int b = 0; b <= bins; ++b) h.bin_edges[b] = lo + width * b;
    h.bin_edges.back() = hi;
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    for (double v : values) {
        int b = static_cast<int>((v - lo) / width);
        b = std::clamp(b, 0, bins - 1);
        h.counts[b] += 1;
    }
    h.total = static_cast<long>(values.size());
    return h;
}

double semicircle_cdf(double radius, double x) {
    if (x <= -radius) return 0.0;
    if (x >= radius) return 1.0;
    const double t = x / radius;
    return 0.5 + (t * std::sqrt(1.0 - t * t) + std::asin(t)) / std::numbers::pi;
}

double semicircle_distance(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("semicircle_distance: empty input");
    const std::size_t n = values.size();

    CompensatedSum mean_acc;
    for (double v : values) mean_acc.add(v);
    const double mean = mean_acc.value() / static_cast<double>(n);
    CompensatedSum var_acc;
    for (double v : values) {
        const double d = v - mean;
        var_acc.add(d * d);
    }
    const double variance = var_acc.value() / static_cast<double>(n);
    if (!(variance > 0.0)) throw NumericalError("semicircle_distance: zero variance input");
    const double radius = 2.0 * std::sqrt(variance);

    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = semicircle_cdf(radius, sorted[i] - mean);
        const double below = static_cast<double>(i) / static_cast<double>(n);
        const double above = static_cast<double>(i + 1) / static_cast<double>(n);
        ks = std::max(ks, std::max(std::abs(f - below), std::abs(above - f)));
    }
    return ks;
}

} // namespace rootflow
