#pragma once

#include "rootflow/root_set.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace rootflow {

// Precomputed near/farfield decomposition of S(r) = sum_i w_i / (r - x_i).
//
// The source span is cut into 2^levels equal-width panels holding O(cheb_order)
// sources each. For every panel the plan tabulates, at the panel's Chebyshev
// nodes, the contribution of all sources outside the panel and its immediate
// neighbours. eval_pair then sums the <= 3 near panels directly and reads the
// farfield off the barycentric interpolant. The table is filled by a
// hierarchical pass over a binary panel tree (anterpolation up, node-to-node
// transfers between well-separated tree nodes, interpolation down), costing
// O(n log(n/eps)) arithmetic.
//
// A completed plan is immutable; eval_pair / eval_batch are pure reads.
struct SumPlan {
    double epsilon = 0.0;
    int cheb_order = 0;
    int near_radius = 1;
    bool direct = false; // small n: no compression, direct summation

    // panel geometry (2^levels equal-width panels over [lo, hi])
    int levels = 0;
    int num_panels = 1;
    double lo = 0.0;
    double hi = 0.0;
    double panel_width = 0.0;

    std::vector<std::size_t> panel_offset; // size num_panels+1; sources are sorted
    std::vector<double> farfield;          // num_panels x cheb_order node values (S)
    std::vector<double> ref_nodes;         // Chebyshev nodes on [-1,1], size cheb_order
    std::vector<double> bary_weights;      // barycentric weights, size cheb_order

    int panel_of(double x) const;
};

// Chebyshev node count needed for accuracy eps.
int cheb_order_for(double epsilon);

// Builds the near/farfield plan. Requires 0 < epsilon < 1 and n >= 1.
SumPlan build_plan(const SourceSet& sources, double epsilon);

// S(r) and dS(r) = -sum w_i/(r-x_i)^2. The query must stay at least the
// source separation floor away from every source position.
std::pair<double, double> eval_pair(const SumPlan& plan, const SourceSet& sources, double r);

// Elementwise identical to mapping eval_pair over the queries.
std::vector<std::pair<double, double>> eval_batch(const SumPlan& plan, const SourceSet& sources,
                                                  const std::vector<double>& queries);

} // namespace rootflow
