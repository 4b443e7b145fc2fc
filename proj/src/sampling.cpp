#include "rootflow/sampling.hpp"

#include "rootflow/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rootflow {

namespace {

constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

const double kSqrt3 = std::sqrt(3.0);
const double kParaEdge = std::sqrt(5.0 / 3.0);
const double kParaCdfSlope = 3.0 * std::sqrt(3.0) / (10.0 * std::sqrt(5.0)); // F(x) = 1/2 + c x^3

double semicircle_cdf_r(double radius, double x) {
    if (x <= -radius) return 0.0;
    if (x >= radius) return 1.0;
    const double t = x / radius;
    return 0.5 + (t * std::sqrt(1.0 - t * t) + std::asin(t)) / std::numbers::pi;
}

double semicircle_quantile_r(double radius, double u) {
    double lo = -radius, hi = radius;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (semicircle_cdf_r(radius, mid) < u)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

Rng::Rng(RngStream s) : key_(mix(s.seed ^ (kGolden64 * (s.stream + 1)))) {}

std::uint64_t Rng::mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::next_u64() {
    counter_ += 1;
    return mix(key_ + counter_ * kGolden64);
}

double Rng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
}

DistributionSpec parse_distribution(const std::string& name) {
    if (name == "uniform") return {Law::uniform_sym};
    if (name == "gaussian") return {Law::gaussian_std};
    if (name == "parabolic") return {Law::parabolic};
    if (name == "gap") return {Law::gap};
    if (name == "semicircle") return {Law::semicircle_ref};
    throw std::invalid_argument("unknown distribution: " + name);
}

std::string law_name(Law law) {
    switch (law) {
        case Law::uniform_sym: return "uniform";
        case Law::gaussian_std: return "gaussian";
        case Law::parabolic: return "parabolic";
        case Law::gap: return "gap";
        case Law::semicircle_ref: return "semicircle";
    }
    return "?";
}

double law_cdf(Law law, double x) {
    switch (law) {
        case Law::uniform_sym:
            if (x <= -kSqrt3) return 0.0;
            if (x >= kSqrt3) return 1.0;
            return (x + kSqrt3) / (2.0 * kSqrt3);
        case Law::gaussian_std:
            return 0.5 * std::erfc(-x / std::numbers::sqrt2);
        case Law::parabolic:
            if (x <= -kParaEdge) return 0.0;
            if (x >= kParaEdge) return 1.0;
            return 0.5 + kParaCdfSlope * x * x * x;
        case Law::gap:
            if (x <= -2.0) return 0.0;
            if (x <= -1.0) return (x + 2.0) / 3.0;
            if (x <= 1.0) return 1.0 / 3.0;
            if (x <= 2.0) return 1.0 / 3.0 + 2.0 * (x - 1.0) / 3.0;
            return 1.0;
        case Law::semicircle_ref:
            return semicircle_cdf_r(2.0, x);
    }
    return 0.0;
}

double law_quantile(Law law, double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("law_quantile: u must be in (0,1)");
    switch (law) {
        case Law::uniform_sym:
            return kSqrt3 * (2.0 * u - 1.0);
        case Law::gaussian_std:
            throw std::invalid_argument("law_quantile: gaussian uses the polar method");
        case Law::parabolic:
            return std::cbrt((u - 0.5) / kParaCdfSlope);
        case Law::gap:
            if (u < 1.0 / 3.0) return -2.0 + 3.0 * u;
            return 1.0 + 1.5 * (u - 1.0 / 3.0);
        case Law::semicircle_ref:
            return semicircle_quantile_r(2.0, u);
    }
    return 0.0;
}

RootSet sample_roots(const DistributionSpec& spec, std::size_t n, RngStream stream) {
    if (n < 1) throw std::invalid_argument("sample_roots: n must be >= 1");
    Rng rng(stream);
    std::vector<double> values(n);
    if (spec.law == Law::gaussian_std) {
        for (std::size_t i = 0; i < n; ++i) values[i] = rng.gaussian();
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            double u;
            do {
                u = rng.uniform01();
            } while (u == 0.0);
            values[i] = law_quantile(spec.law, u);
        }
    }
    std::sort(values.begin(), values.end());
    if (spec.jitter > 0.0 && n >= 2) {
        const double spread = values.back() - values.front();
        const double floor = kMinSeparationRel * spread;
        bool touched = false;
        for (std::size_t i = 1; i < n; ++i) {
            if (values[i] - values[i - 1] < floor) {
                values[i] += spec.jitter * spread * rng.uniform01();
                touched = true;
            }
        }
        if (touched) std::sort(values.begin(), values.end());
    }
    return RootSet::from_unsorted(std::move(values));
}

AffineNormalization normalize_affine(const RootSet& roots) {
    const std::size_t n = roots.n();
    if (n < 2) throw std::invalid_argument("normalize_affine: need at least two roots");
    const double mean = roots.mean();
    CompensatedSum var;
    for (double x : roots.roots()) {
        const double d = x - mean;
        var.add(d * d);
    }
    const double variance = var.value() / static_cast<double>(n);
    if (!(variance > 0.0)) throw NumericalError("normalize_affine: zero variance input");
    const double scale = std::sqrt(variance);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (roots[i] - mean) / scale;
    AffineNormalization result;
    result.roots = RootSet(std::move(out));
    result.shift = mean;
    result.scale = scale;
    return result;
}

} // namespace rootflow
