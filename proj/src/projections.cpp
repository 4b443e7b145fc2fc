#include "rootflow/projections.hpp"

#include "rootflow/numeric.hpp"

#include <algorithm>
#include <stdexcept>

namespace rootflow {

RootSet secular_roots(const RootSet& eigs, std::vector<double> w_squared,
                      const EvolveConfig& cfg) {
    if (w_squared.size() != eigs.n())
        throw std::invalid_argument("secular_roots: weight count must match eigenvalue count");
    double wmax = 0.0;
    for (double w : w_squared) wmax = std::max(wmax, w);
    if (!(wmax > 0.0)) throw std::invalid_argument("secular_roots: weights must be positive");
    for (double& w : w_squared) w /= wmax;
    return weighted_critical_points(SourceSet(eigs.roots(), std::move(w_squared)), cfg);
}

RootSet project_once(const RootSet& eigs, ProjectionMode mode, Rng& rng,
                     const EvolveConfig& cfg) {
    if (eigs.n() < 2) throw std::invalid_argument("project_once: need at least two eigenvalues");
    if (mode == ProjectionMode::deterministic) return differentiate_once(eigs, cfg);

    const std::size_t n = eigs.n();
    std::vector<double> w2(n);
    while (true) {
        CompensatedSum norm;
        for (std::size_t i = 0; i < n; ++i) {
            const double g = rng.gaussian();
            w2[i] = g * g;
            norm.add(w2[i]);
        }
        const double total = norm.value();
        bool ok = total > 0.0;
        for (std::size_t i = 0; ok && i < n; ++i) {
            w2[i] /= total;
            if (w2[i] < 1e-300) ok = false;
        }
        if (ok) break;
    }
    return secular_roots(eigs, std::move(w2), cfg);
}

SpectrumTrajectory iterate_projections(const RootSet& eigs, int steps, ProjectionMode mode,
                                       RngStream stream, const EvolveConfig& cfg) {
    const std::size_t n = eigs.n();
    if (steps < 1 || static_cast<std::size_t>(steps) > n - 1)
        throw std::invalid_argument("iterate_projections: require 1 <= steps <= n-1");
    const int stride = cfg.snapshot_stride > 0 ? cfg.snapshot_stride : std::max(1, steps / 10);

    SpectrumTrajectory traj;
    traj.mode = mode;
    traj.seed = stream;
    traj.snapshots.push_back({0, eigs});
    Rng rng(stream);
    RootSet cur = eigs;
    for (int step = 1; step <= steps; ++step) {
        try {
            cur = project_once(cur, mode, rng, cfg);
        } catch (const NumericalError& err) {
            throw NumericalError(err.what(), step, err.interval());
        }
        if (step % stride == 0 && step != steps) traj.snapshots.push_back({step, cur});
    }
    traj.snapshots.push_back({steps, cur});
    traj.final = std::move(cur);
    return traj;
}

} // namespace rootflow
