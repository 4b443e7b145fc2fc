#include "rootflow/evolve.hpp"

#include "rootflow/numeric.hpp"
#include "rootflow/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rootflow {

namespace {

constexpr std::size_t kParallelIntervalThreshold = 2048;

struct IntervalResult {
    double root = 0.0;
    int iterations = 0;
    bool degenerate = false;
    bool converged = true;
};

IntervalResult solve_interval(const SumPlan& plan, const SourceSet& sources, std::size_t i,
                              const EvolveConfig& cfg) {
    const double a = sources.positions()[i];
    const double b = sources.positions()[i + 1];
    const double width = b - a;
    const double floor = sources.separation_floor();

    IntervalResult out;
    if (width < 10.0 * floor) {
        out.root = a + 0.5 * width;
        out.degenerate = true;
        return out;
    }

    // S has a pole of sign +inf at a and -inf at b, and dS < 0 throughout,
    // so S crosses zero exactly once in (a, b). Iterates are kept at least
    // one separation floor away from the poles.
    double lo = a;
    double hi = b;
    double r = a + 0.5 * width;
    double prev_abs_s = std::numeric_limits<double>::infinity();
    // floored at the double resolution of the endpoints: steps below one ulp
    // of the position cannot move the iterate at all
    const double step_tol =
        std::max(cfg.newton_tol * width,
                 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b)));
    out.root = r;

    for (int iter = 0; iter < cfg.max_newton_iters; ++iter) {
        out.iterations = iter + 1;
        const auto [s, ds] = eval_pair(plan, sources, r);
        if (s == 0.0) return out;
        if (s > 0.0)
            lo = r;
        else
            hi = r;

        // The pending Newton correction is the resolution limit at r: once it
        // drops below the step tolerance, r is converged even if |S| has
        // reached its rounding floor.
        const double newton_step = ds < 0.0 ? -s / ds : 0.0;
        if (ds < 0.0 && std::abs(newton_step) <= step_tol) {
            const double polished = std::clamp(r + newton_step, a + floor, b - floor);
            if (polished > lo && polished < hi) out.root = polished;
            return out;
        }

        double next;
        const double abs_s = std::abs(s);
        if (abs_s < prev_abs_s && ds < 0.0) {
            next = r + newton_step;
            if (!(next > lo && next < hi)) next = lo + 0.5 * (hi - lo);
        } else {
            next = lo + 0.5 * (hi - lo);
        }
        prev_abs_s = abs_s;
        next = std::clamp(next, a + floor, b - floor);

        const double moved = std::abs(next - r);
        r = next;
        out.root = r;
        if (moved <= step_tol || hi - lo <= step_tol) return out;
    }
    out.converged = false;
    return out;
}

} // namespace

RootSet weighted_critical_points(const SourceSet& sources, const EvolveConfig& cfg,
                                 SweepStats* stats) {
    const std::size_t n = sources.n();
    if (n < 2) throw std::invalid_argument("weighted_critical_points: need at least two sources");
    if (!(cfg.newton_tol > 0.0) || cfg.max_newton_iters < 1)
        throw std::invalid_argument("weighted_critical_points: bad Newton configuration");

    const SumPlan plan = build_plan(sources, cfg.epsilon);
    std::vector<IntervalResult> results(n - 1);
    parallel_for(0, n - 1, kParallelIntervalThreshold, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) results[i] = solve_interval(plan, sources, i, cfg);
    });

    std::vector<double> roots(n - 1);
    int degenerate = 0;
    int max_iters = 0;
    for (std::size_t i = 0; i < n - 1; ++i) {
        if (!results[i].converged)
            throw NumericalError("weighted_critical_points: Newton failed to converge", -1,
                                 static_cast<long>(i));
        roots[i] = results[i].root;
        degenerate += results[i].degenerate ? 1 : 0;
        max_iters = std::max(max_iters, results[i].iterations);
    }
    if (stats) {
        stats->degenerate_intervals += degenerate;
        stats->max_iterations = std::max(stats->max_iterations, max_iters);
    }
    return RootSet(std::move(roots));
}

RootSet differentiate_once(const RootSet& roots, const EvolveConfig& cfg, SweepStats* stats) {
    if (roots.n() < 2) throw std::invalid_argument("differentiate_once: need at least two roots");
    return weighted_critical_points(SourceSet::from_roots(roots), cfg, stats);
}

Trajectory differentiate_many(const RootSet& roots, int k, const EvolveConfig& cfg) {
    const std::size_t n = roots.n();
    if (k < 1 || static_cast<std::size_t>(k) > n - 1)
        throw std::invalid_argument("differentiate_many: require 1 <= k <= n-1");
    const int stride = cfg.snapshot_stride > 0 ? cfg.snapshot_stride : std::max(1, k / 10);

    Trajectory traj;
    traj.snapshots.push_back({0, roots});
    RootSet cur = roots;
    SweepStats stats;
    for (int step = 1; step <= k; ++step) {
        try {
            cur = differentiate_once(cur, cfg, &stats);
        } catch (const NumericalError& err) {
            throw NumericalError(err.what(), step, err.interval());
        }
        if (step % stride == 0 && step != k) traj.snapshots.push_back({step, cur});
    }
    traj.snapshots.push_back({k, cur});
    traj.final = std::move(cur);
    traj.degenerate_intervals = stats.degenerate_intervals;
    return traj;
}

} // namespace rootflow
