#pragma once

#include "rootflow/root_set.hpp"

#include <cstdint>
#include <string>

namespace rootflow {

// Counter-based stream coordinates: identical (seed, stream) always replay
// the identical sample sequence.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// SplitMix64 (Steele/Lea/Flood): the i-th output is the finalizer applied to
// key + i * 0x9E3779B97F4A7C15. Streams decorrelate through the key.
class Rng {
public:
    explicit Rng(RngStream s);

    std::uint64_t next_u64();
    double uniform01(); // [0, 1), 53-bit resolution
    double gaussian();  // standard normal, Marsaglia polar method

private:
    static std::uint64_t mix(std::uint64_t z);
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

enum class Law { uniform_sym, gaussian_std, parabolic, gap, semicircle_ref };

// Named sampling law for i.i.d. roots. All continuous laws except `gap` have
// mean 0 and variance 1 analytically; gap keeps its raw mean 1/2.
//   uniform_sym    uniform on [-sqrt(3), sqrt(3)]
//   gaussian_std   standard normal
//   parabolic      density (9 sqrt(3) / (10 sqrt(5))) x^2 on [-sqrt(5/3), sqrt(5/3)]
//   gap            1/3 uniform mass on [-2,-1], 2/3 on [1,2]
//   semicircle_ref semicircle of radius 2
struct DistributionSpec {
    Law law = Law::uniform_sym;
    double jitter = 0.0; // relative perturbation scale for colliding pairs
};

// Parses "uniform" | "gaussian" | "parabolic" | "gap" | "semicircle".
DistributionSpec parse_distribution(const std::string& name);
std::string law_name(Law law);

// Analytic CDF of the law at x (gaussian via erf).
double law_cdf(Law law, double x);

// Inverse CDF at u in (0,1); gaussian_std unsupported (sampled by polar).
double law_quantile(Law law, double u);

// n i.i.d. draws, sorted. Draws use the inverse-CDF method except the
// Gaussian (polar). Pairs closer than the separation floor are jittered
// (when spec.jitter > 0) and then pushed apart deterministically.
RootSet sample_roots(const DistributionSpec& spec, std::size_t n, RngStream rng);

struct AffineNormalization {
    RootSet roots;
    double shift = 0.0;
    double scale = 1.0;
};

// (roots - shift)/scale with sample mean exactly 0 and population variance
// (divide by n) exactly 1, up to rounding.
AffineNormalization normalize_affine(const RootSet& roots);

} // namespace rootflow
