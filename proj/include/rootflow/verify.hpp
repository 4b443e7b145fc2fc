#pragma once

#include "rootflow/evolve.hpp"
#include "rootflow/poly_core.hpp"
#include "rootflow/root_set.hpp"
#include "rootflow/sampling.hpp"

#include <cstddef>
#include <vector>

namespace rootflow {

// Quality of the Hermite approximation of scaled final roots: gamma is the
// closed-form least-squares shift aligning sqrt(n) r_i with the roots y_i of
// He_l, rms_error the error statistic (1/l) (sum (sqrt(n) r_i + gamma - y_i)^2)^{1/2}.
struct HermiteFitReport {
    double gamma = 0.0;
    double rms_error = 0.0;
    int ell = 0;
    std::size_t n = 0;
};

struct LemmaReport {
    int m = 0;
    std::size_t n = 0;
    int trials = 0;
    double mean_abs_residual = 0.0;
    double normalized_ratio = 0.0; // mean_abs_residual / n^{(m-1)/2}
};

struct ConservationReport {
    double mean_drift = 0.0;                // max |mean change| between snapshots
    double pairwise_identity_rel_err = 0.0; // max over snapshot pairs
    int steps_checked = 0;
    int skipped = 0; // snapshot pairs with < 2 roots (identity undefined)
};

struct PropositionReport {
    std::size_t n = 0;
    int ell = 0;
    double max_deviation = 0.0;
};

HermiteFitReport hermite_fit(const RootSet& final_roots, std::size_t n);

// e_m(roots) minus the concentration prediction
// sum_{k<=m/2} (-1)^k e_1^{m-2k} n^k / (k! (m-2k)! 2^k).
double lemma_residual(const RootSet& roots, int m);

// The prediction itself; algebraically n^{m/2} He_m(e_1/sqrt(n)) / m!.
double lemma_predicted_sum(double e1, std::size_t n, int m);

// Monte Carlo estimate of E|residual| over fresh samples, one report per n.
// Each (m, n) cell draws from its own deterministic stream derived from rng.
std::vector<LemmaReport> lemma_sweep(const DistributionSpec& spec, int m,
                                     const std::vector<std::size_t>& n_grid, int trials,
                                     RngStream rng);

// Mean invariance and the pairwise-square identity
// sum_{i<j}(x_i-x_j)^2 / (a^2(a-1)) across consecutive snapshots.
ConservationReport conservation_report(const Trajectory& trajectory);

// Max over the grid of |d^l/dy^l (1-y^2/n)^n - (-1)^l H_l(y) e^{-y^2}|,
// by exact coefficient-wise differentiation of the binomial expansion.
PropositionReport proposition_check(std::size_t n, int ell, const std::vector<double>& y_grid);

// Final l roots via the coefficient route: scaled derivative coefficients of
// the sample plus the dense bracketing root-finder. Cross-validates the
// repeated-differentiation route.
RootSet theorem_roots_by_coefficients(const RootSet& roots, int ell);

} // namespace rootflow
