#include "rootflow/fast_cauchy.hpp"

#include "rootflow/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rootflow {

namespace {

constexpr int kDirectFactor = 4; // n <= 4*cheb_order degenerates to direct summation

// Barycentric Lagrange basis at reference nodes, evaluated at u in [-1,1].
void lagrange_basis(const std::vector<double>& nodes, const std::vector<double>& weights, double u,
                    std::vector<double>& out) {
    const std::size_t p = nodes.size();
    out.assign(p, 0.0);
    double denom = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        const double d = u - nodes[j];
        if (d == 0.0) {
            out.assign(p, 0.0);
            out[j] = 1.0;
            return;
        }
        out[j] = weights[j] / d;
        denom += out[j];
    }
    for (std::size_t j = 0; j < p; ++j) out[j] /= denom;
}

struct NodeGeometry {
    double center;
    double half;
};

} // namespace

int SumPlan::panel_of(double x) const {
    if (num_panels == 1) return 0;
    const int idx = static_cast<int>((x - lo) / panel_width);
    return std::clamp(idx, 0, num_panels - 1);
}

int cheb_order_for(double epsilon) {
    const int p = static_cast<int>(std::ceil(std::log(1.0 / epsilon) / std::log(4.0))) + 2;
    return std::max(p, 4);
}

SumPlan build_plan(const SourceSet& sources, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("build_plan: epsilon must be in (0, 1)");
    const std::size_t n = sources.n();
    if (n < 1) throw std::invalid_argument("build_plan: need at least one source");

    SumPlan plan;
    plan.epsilon = epsilon;
    plan.cheb_order = cheb_order_for(epsilon);
    const int p = plan.cheb_order;

    // panel count rounding to the nearest power of two keeps the expected
    // occupancy within a factor sqrt(2) of cheb_order
    const int levels = static_cast<int>(
        std::lround(std::log2(std::max(1.0, static_cast<double>(n) / p))));
    if (n <= static_cast<std::size_t>(kDirectFactor * p) || levels < 2) {
        plan.direct = true;
        return plan;
    }

    plan.levels = levels;
    plan.num_panels = 1 << levels;
    plan.lo = sources.min();
    plan.hi = sources.max();
    plan.panel_width = (plan.hi - plan.lo) / plan.num_panels;
    if (!(plan.panel_width > 0.0)) {
        plan.direct = true;
        return plan;
    }

    plan.ref_nodes.resize(p);
    plan.bary_weights.resize(p);
    for (int j = 0; j < p; ++j) {
        const double theta = std::numbers::pi * (2.0 * j + 1.0) / (2.0 * p);
        plan.ref_nodes[j] = std::cos(theta);
        plan.bary_weights[j] = (j % 2 == 0 ? 1.0 : -1.0) * std::sin(theta);
    }

    // Source index ranges per panel (positions are sorted).
    const std::vector<double>& xs = sources.positions();
    const std::vector<double>& ws = sources.weights();
    plan.panel_offset.assign(static_cast<std::size_t>(plan.num_panels) + 1, 0);
    {
        std::size_t i = 0;
        for (int b = 0; b < plan.num_panels; ++b) {
            plan.panel_offset[b] = i;
            while (i < n && plan.panel_of(xs[i]) == b) ++i;
        }
        plan.panel_offset[plan.num_panels] = n;
    }

    const auto node_geometry = [&](int level, int idx) -> NodeGeometry {
        const double width = (plan.hi - plan.lo) / (1 << level);
        return {plan.lo + width * (idx + 0.5), 0.5 * width};
    };

    // Upward: equivalent weights at Chebyshev nodes, leaves first.
    // equivalent[level] is (2^level) x p.
    std::vector<std::vector<double>> equivalent(static_cast<std::size_t>(levels) + 1);
    equivalent[levels].assign(static_cast<std::size_t>(plan.num_panels) * p, 0.0);
    {
        std::vector<double> basis;
        for (int b = 0; b < plan.num_panels; ++b) {
            const NodeGeometry g = node_geometry(levels, b);
            double* eq = equivalent[levels].data() + static_cast<std::size_t>(b) * p;
            for (std::size_t i = plan.panel_offset[b]; i < plan.panel_offset[b + 1]; ++i) {
                const double u = (xs[i] - g.center) / g.half;
                lagrange_basis(plan.ref_nodes, plan.bary_weights, u, basis);
                for (int j = 0; j < p; ++j) eq[j] += ws[i] * basis[j];
            }
        }
    }

    // Child-to-parent transfer matrices: basis of the parent nodes evaluated
    // at the child nodes mapped into parent coordinates. Geometry is the same
    // at every level, so two p x p matrices cover the whole tree.
    std::vector<double> to_left(static_cast<std::size_t>(p) * p);
    std::vector<double> to_right(static_cast<std::size_t>(p) * p);
    {
        std::vector<double> basis;
        for (int k = 0; k < p; ++k) {
            lagrange_basis(plan.ref_nodes, plan.bary_weights, 0.5 * (plan.ref_nodes[k] - 1.0), basis);
            for (int j = 0; j < p; ++j) to_left[static_cast<std::size_t>(j) * p + k] = basis[j];
            lagrange_basis(plan.ref_nodes, plan.bary_weights, 0.5 * (plan.ref_nodes[k] + 1.0), basis);
            for (int j = 0; j < p; ++j) to_right[static_cast<std::size_t>(j) * p + k] = basis[j];
        }
    }

    for (int level = levels - 1; level >= 2; --level) {
        const int count = 1 << level;
        equivalent[level].assign(static_cast<std::size_t>(count) * p, 0.0);
        for (int i = 0; i < count; ++i) {
            double* par = equivalent[level].data() + static_cast<std::size_t>(i) * p;
            for (int side = 0; side < 2; ++side) {
                const double* child =
                    equivalent[level + 1].data() + static_cast<std::size_t>(2 * i + side) * p;
                const std::vector<double>& mat = side == 0 ? to_left : to_right;
                for (int j = 0; j < p; ++j) {
                    double acc = 0.0;
                    const double* row = mat.data() + static_cast<std::size_t>(j) * p;
                    for (int k = 0; k < p; ++k) acc += row[k] * child[k];
                    par[j] += acc;
                }
            }
        }
    }

    // Downward: transfers between well-separated same-level nodes, then
    // interpolation onto the children.
    std::vector<std::vector<double>> local(static_cast<std::size_t>(levels) + 1);
    for (int level = 2; level <= levels; ++level) {
        const int count = 1 << level;
        local[level].assign(static_cast<std::size_t>(count) * p, 0.0);
        if (level > 2) {
            // parent local field restricted to each child
            const int pcount = 1 << (level - 1);
            for (int i = 0; i < pcount; ++i) {
                const double* par = local[level - 1].data() + static_cast<std::size_t>(i) * p;
                for (int side = 0; side < 2; ++side) {
                    double* child = local[level].data() + static_cast<std::size_t>(2 * i + side) * p;
                    const std::vector<double>& mat = side == 0 ? to_left : to_right;
                    for (int k = 0; k < p; ++k) {
                        double acc = 0.0;
                        for (int j = 0; j < p; ++j)
                            acc += mat[static_cast<std::size_t>(j) * p + k] * par[j];
                        child[k] += acc;
                    }
                }
            }
        }
        for (int i = 0; i < count; ++i) {
            const int parent = i >> 1;
            const int qlo = std::max(0, 2 * (parent - 1));
            const int qhi = std::min(count - 1, 2 * (parent + 1) + 1);
            double* loc = local[level].data() + static_cast<std::size_t>(i) * p;
            const NodeGeometry gi = node_geometry(level, i);
            for (int q = qlo; q <= qhi; ++q) {
                if (std::abs(q - i) <= 1) continue;
                const double* eq = equivalent[level].data() + static_cast<std::size_t>(q) * p;
                const NodeGeometry gq = node_geometry(level, q);
                for (int j = 0; j < p; ++j) {
                    const double t = gi.center + gi.half * plan.ref_nodes[j];
                    double acc = 0.0;
                    for (int k = 0; k < p; ++k)
                        acc += eq[k] / (t - (gq.center + gq.half * plan.ref_nodes[k]));
                    loc[j] += acc;
                }
            }
        }
    }

    plan.farfield = std::move(local[levels]);
    return plan;
}

namespace {

// Direct sum of w_i/(r-x_i) and its derivative over index range [a, b).
// Tracks the closest approach so callers can detect collisions.
void direct_sum(const std::vector<double>& xs, const std::vector<double>& ws, std::size_t a,
                std::size_t b, double r, double& s, double& ds, double& min_dist) {
    double sv = 0.0, dv = 0.0;
    for (std::size_t i = a; i < b; ++i) {
        const double d = r - xs[i];
        const double ad = std::abs(d);
        if (ad < min_dist) min_dist = ad;
        const double inv = 1.0 / d;
        const double t = ws[i] * inv;
        sv += t;
        dv -= t * inv;
    }
    s += sv;
    ds += dv;
}

} // namespace

std::pair<double, double> eval_pair(const SumPlan& plan, const SourceSet& sources, double r) {
    const std::vector<double>& xs = sources.positions();
    const std::vector<double>& ws = sources.weights();
    const double floor = sources.separation_floor();

    double s = 0.0, ds = 0.0;
    double min_dist = std::numeric_limits<double>::infinity();

    if (plan.direct || r < plan.lo || r > plan.hi) {
        direct_sum(xs, ws, 0, sources.n(), r, s, ds, min_dist);
        if (min_dist < floor) throw std::domain_error("eval_pair: query collides with a source");
        return {s, ds};
    }

    const int b = plan.panel_of(r);
    const std::size_t near_lo = plan.panel_offset[static_cast<std::size_t>(std::max(0, b - plan.near_radius))];
    const std::size_t near_hi =
        plan.panel_offset[static_cast<std::size_t>(std::min(plan.num_panels, b + plan.near_radius + 1))];
    direct_sum(xs, ws, near_lo, near_hi, r, s, ds, min_dist);
    if (min_dist < floor) throw std::domain_error("eval_pair: query collides with a source");

    // farfield via barycentric interpolation of the tabulated node values
    const int p = plan.cheb_order;
    const double* f = plan.farfield.data() + static_cast<std::size_t>(b) * p;
    const double width = plan.panel_width;
    const double center = plan.lo + width * (b + 0.5);
    const double half = 0.5 * width;
    const double u = (r - center) / half;

    int hit = -1;
    double num = 0.0, den = 0.0, dnum = 0.0, dden = 0.0;
    for (int j = 0; j < p; ++j) {
        const double d = u - plan.ref_nodes[j];
        if (d == 0.0) {
            hit = j;
            break;
        }
        const double inv = 1.0 / d;
        const double c = plan.bary_weights[j] * inv;
        num += c * f[j];
        den += c;
        const double c2 = c * inv;
        dnum += c2 * f[j];
        dden += c2;
    }
    if (hit >= 0) {
        // query exactly on a node: value is tabulated; derivative from the
        // differentiation-matrix row D_jk = (l_k/l_j)/(t_j-t_k)
        s += f[hit];
        double dsum = 0.0;
        for (int k = 0; k < p; ++k) {
            if (k == hit) continue;
            const double djk = (plan.bary_weights[k] / plan.bary_weights[hit]) /
                               (plan.ref_nodes[hit] - plan.ref_nodes[k]);
            dsum += djk * (f[k] - f[hit]);
        }
        ds += dsum / half;
    } else {
        s += num / den;
        // d/du of num/den with num' = -dnum, den' = -dden
        ds += ((-dnum * den + num * dden) / (den * den)) / half;
    }
    return {s, ds};
}

std::vector<std::pair<double, double>> eval_batch(const SumPlan& plan, const SourceSet& sources,
                                                  const std::vector<double>& queries) {
    std::vector<std::pair<double, double>> out;
    out.reserve(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        try {
            out.push_back(eval_pair(plan, sources, queries[i]));
        } catch (const std::domain_error&) {
            throw std::domain_error("eval_batch: query " + std::to_string(i) +
                                    " collides with a source");
        }
    }
    return out;
}

} // namespace rootflow
