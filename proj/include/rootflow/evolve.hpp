#pragma once

#include "rootflow/fast_cauchy.hpp"
#include "rootflow/root_set.hpp"

#include <vector>

namespace rootflow {

struct EvolveConfig {
    double epsilon = 1e-12;     // fast-sum accuracy
    double newton_tol = 1e-14;  // step tolerance, scaled by the local gap
    int max_newton_iters = 60;
    int snapshot_stride = 0;    // 0: auto, max(1, steps/10)
};

struct SweepStats {
    int degenerate_intervals = 0; // intervals returned as midpoints
    int max_iterations = 0;
};

struct Snapshot {
    int derivative_count = 0;
    RootSet roots;
};

struct Trajectory {
    std::vector<Snapshot> snapshots; // strictly increasing derivative counts
    RootSet final;
    int degenerate_intervals = 0;
};

// The n-1 zeros of S(r) = sum w_i/(r - x_i), one strictly inside each
// interval (x_i, x_{i+1}). Newton on S with a bisection safeguard: the
// bracket is maintained throughout, and a Newton step is rejected whenever
// it leaves the bracket or |S| fails to decrease. Intervals narrower than
// ten separation floors are returned as midpoints and counted in `stats`.
RootSet weighted_critical_points(const SourceSet& sources, const EvolveConfig& cfg,
                                 SweepStats* stats = nullptr);

// Critical points of the monic polynomial with the given roots (unit
// weights). Output strictly interlaces the input.
RootSet differentiate_once(const RootSet& roots, const EvolveConfig& cfg,
                           SweepStats* stats = nullptr);

// k differentiation sweeps with a snapshot every snapshot_stride steps plus
// the final state. Deterministic given inputs. Requires 1 <= k <= n-1.
Trajectory differentiate_many(const RootSet& roots, int k, const EvolveConfig& cfg);

} // namespace rootflow
