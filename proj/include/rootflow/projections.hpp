#pragma once

#include "rootflow/evolve.hpp"
#include "rootflow/root_set.hpp"
#include "rootflow/sampling.hpp"

#include <vector>

namespace rootflow {

enum class ProjectionMode { deterministic, random };

struct SpectrumTrajectory {
    ProjectionMode mode = ProjectionMode::deterministic;
    std::vector<Snapshot> snapshots; // snapshot k holds n-k eigenvalues
    RootSet final;
    RngStream seed;
};

// Roots of the secular equation sum_i w2_i/(z - eig_i) = 0, one per gap.
// Weights are normalized by their maximum before solving (the zeros are
// scale-invariant), so an all-equal vector reduces to the unit-weight case
// exactly. Test hook for the forced-equal-weights identity.
RootSet secular_roots(const RootSet& eigs, std::vector<double> w_squared,
                      const EvolveConfig& cfg);

// One rank-one projection update of a symmetric spectrum. Deterministic mode
// is differentiate_once; random mode draws w uniformly on the sphere
// (normalized Gaussians, w2_i = g_i^2 / sum g^2) and solves the weighted
// secular equation. Weight vectors with an entry below 1e-300 are redrawn.
RootSet project_once(const RootSet& eigs, ProjectionMode mode, Rng& rng,
                     const EvolveConfig& cfg);

// Iterates project_once, one fresh weight vector per step in random mode,
// recording snapshots every cfg.snapshot_stride steps plus the final state.
SpectrumTrajectory iterate_projections(const RootSet& eigs, int steps, ProjectionMode mode,
                                       RngStream stream, const EvolveConfig& cfg);

} // namespace rootflow
