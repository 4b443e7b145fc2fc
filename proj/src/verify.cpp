#include "rootflow/verify.hpp"

#include "rootflow/numeric.hpp"
#include "rootflow/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rootflow {

HermiteFitReport hermite_fit(const RootSet& final_roots, std::size_t n) {
    const std::size_t ell = final_roots.n();
    if (ell < 1) throw std::invalid_argument("hermite_fit: need at least one root");
    if (n < ell) throw std::invalid_argument("hermite_fit: require n >= l");

    const RootSet targets = hermite_roots(static_cast<int>(ell));
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    CompensatedSum shift;
    for (std::size_t i = 0; i < ell; ++i) shift.add(targets[i] - sqrt_n * final_roots[i]);
    const double gamma = shift.value() / static_cast<double>(ell);

    CompensatedSum sq;
    for (std::size_t i = 0; i < ell; ++i) {
        const double d = sqrt_n * final_roots[i] + gamma - targets[i];
        sq.add(d * d);
    }
    HermiteFitReport report;
    report.gamma = gamma;
    report.rms_error = std::sqrt(sq.value()) / static_cast<double>(ell);
    report.ell = static_cast<int>(ell);
    report.n = n;
    return report;
}

double lemma_predicted_sum(double e1, std::size_t n, int m) {
    if (m < 1) throw std::invalid_argument("lemma_predicted_sum: m must be >= 1");
    // term_0 = e_1^m / m!, then
    // term_k = -term_{k-1} * (m-2k+2)(m-2k+1) / (2k) * n / e_1^2
    double factorial = 1.0;
    for (int i = 2; i <= m; ++i) factorial *= i;
    CompensatedSum acc;
    double coeff = 1.0 / factorial; // 1/(k!(m-2k)!2^k) with sign, at k=0
    for (int k = 0; 2 * k <= m; ++k) {
        acc.add(coeff * pow_int(e1, m - 2 * k) * pow_int(static_cast<double>(n), k));
        coeff *= -static_cast<double>((m - 2 * k) * (m - 2 * k - 1)) / (2.0 * (k + 1));
    }
    return acc.value();
}

double lemma_residual(const RootSet& roots, int m) {
    if (m < 1) throw std::invalid_argument("lemma_residual: m must be >= 1");
    if (static_cast<std::size_t>(m) > roots.n())
        throw std::invalid_argument("lemma_residual: require m <= n");
    const EsymTable e = elementary_symmetric_all(roots, m);
    return e[m] - lemma_predicted_sum(e[1], roots.n(), m);
}

std::vector<LemmaReport> lemma_sweep(const DistributionSpec& spec, int m,
                                     const std::vector<std::size_t>& n_grid, int trials,
                                     RngStream rng) {
    if (m < 2) throw std::invalid_argument("lemma_sweep: m must be >= 2");
    if (trials < 100) throw std::invalid_argument("lemma_sweep: need at least 100 trials");

    std::vector<LemmaReport> reports;
    reports.reserve(n_grid.size());
    for (std::size_t gi = 0; gi < n_grid.size(); ++gi) {
        const std::size_t n = n_grid[gi];
        const std::uint64_t cell = (static_cast<std::uint64_t>(m) << 40) ^
                                   (static_cast<std::uint64_t>(gi) << 32) ^ rng.stream;
        std::vector<double> abs_residual(trials);
        parallel_for(0, static_cast<std::size_t>(trials), 64, [&](std::size_t b, std::size_t e) {
            for (std::size_t t = b; t < e; ++t) {
                const RootSet sample =
                    sample_roots(spec, n, RngStream{rng.seed, cell + (t << 1)});
                abs_residual[t] = std::abs(lemma_residual(sample, m));
            }
        });
        CompensatedSum acc;
        for (double v : abs_residual) acc.add(v);
        LemmaReport rep;
        rep.m = m;
        rep.n = n;
        rep.trials = trials;
        rep.mean_abs_residual = acc.value() / trials;
        rep.normalized_ratio =
            rep.mean_abs_residual / std::pow(static_cast<double>(n), (m - 1) / 2.0);
        reports.push_back(rep);
    }
    return reports;
}

namespace {

// sum_{i<j} (x_i-x_j)^2 / (a^2 (a-1)), computed through the centered second
// moment: sum_{i<j}(x_i-x_j)^2 = a * sum_i (x_i - mean)^2.
double pairwise_square_functional(const RootSet& roots) {
    const double a = static_cast<double>(roots.n());
    const double mean = roots.mean();
    CompensatedSum acc;
    for (double x : roots.roots()) {
        const double d = x - mean;
        acc.add(d * d);
    }
    return acc.value() / (a * (a - 1.0));
}

} // namespace

ConservationReport conservation_report(const Trajectory& trajectory) {
    if (trajectory.snapshots.size() < 2)
        throw std::invalid_argument("conservation_report: need at least two snapshots");
    ConservationReport report;
    for (std::size_t i = 0; i + 1 < trajectory.snapshots.size(); ++i) {
        const RootSet& a = trajectory.snapshots[i].roots;
        const RootSet& b = trajectory.snapshots[i + 1].roots;
        report.mean_drift = std::max(report.mean_drift, std::abs(b.mean() - a.mean()));
        if (a.n() < 2 || b.n() < 2) {
            report.skipped += 1;
        } else {
            const double qa = pairwise_square_functional(a);
            const double qb = pairwise_square_functional(b);
            const double rel = std::abs(qb - qa) / std::max(qa, qb);
            report.pairwise_identity_rel_err = std::max(report.pairwise_identity_rel_err, rel);
        }
        report.steps_checked += 1;
    }
    return report;
}

PropositionReport proposition_check(std::size_t n, int ell, const std::vector<double>& y_grid) {
    if (ell < 0) throw std::invalid_argument("proposition_check: l must be >= 0");
    if (n < static_cast<std::size_t>(std::max(ell, 1)))
        throw std::invalid_argument("proposition_check: require n >= l");
    const double edge = std::sqrt(static_cast<double>(n));
    for (double y : y_grid)
        if (!(std::abs(y) < edge))
            throw std::invalid_argument("proposition_check: grid outside (-sqrt(n), sqrt(n))");

    // coefficients of (1 - y^2/n)^n over powers y^{2k}: (-1)^k C(n,k)/n^k
    std::vector<double> coeff(2 * n + 1, 0.0);
    double c = 1.0;
    coeff[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        c *= -static_cast<double>(n - k + 1) / (static_cast<double>(k) * static_cast<double>(n));
        coeff[2 * k] = c;
    }
    // differentiate ell times, coefficient-wise
    for (int d = 0; d < ell; ++d) {
        for (std::size_t j = 1; j < coeff.size(); ++j)
            coeff[j - 1] = coeff[j] * static_cast<double>(j);
        coeff.back() = 0.0;
    }

    const double sign = (ell % 2 == 0) ? 1.0 : -1.0;
    PropositionReport report;
    report.n = n;
    report.ell = ell;
    for (double y : y_grid) {
        double value = 0.0;
        for (std::size_t j = coeff.size(); j-- > 0;) value = value * y + coeff[j];
        const double target =
            sign * hermite_eval(HermiteKind::physicists, ell, y) * std::exp(-y * y);
        report.max_deviation = std::max(report.max_deviation, std::abs(value - target));
    }
    return report;
}

RootSet theorem_roots_by_coefficients(const RootSet& roots, int ell) {
    return monic_real_roots(scaled_derivative_coeffs(roots, ell));
}

} // namespace rootflow
