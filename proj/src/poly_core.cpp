#include "rootflow/poly_core.hpp"

#include "rootflow/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rootflow {

MonicPoly::MonicPoly(std::vector<double> f) : f_(std::move(f)) {
    if (f_.empty()) throw std::invalid_argument("MonicPoly: empty coefficient list");
    if (f_[0] != 1.0) throw std::invalid_argument("MonicPoly: f_0 must be 1");
    for (double v : f_)
        if (!std::isfinite(v)) throw std::invalid_argument("MonicPoly: non-finite coefficient");
}

std::vector<double> MonicPoly::standard_coeffs() const {
    const int l = degree();
    std::vector<double> a(l + 1);
    double sign = 1.0;
    for (int k = 0; k <= l; ++k) {
        a[l - k] = sign * f_[k];
        sign = -sign;
    }
    return a;
}

double MonicPoly::eval(double x) const {
    const int l = degree();
    double acc = 1.0; // f_0
    double sign = -1.0;
    for (int k = 1; k <= l; ++k) {
        acc = acc * x + sign * f_[k];
        sign = -sign;
    }
    return acc;
}

void MonicPoly::eval_with_derivative(double x, double& p, double& dp) const {
    const int l = degree();
    p = 1.0;
    dp = 0.0;
    double sign = -1.0;
    for (int k = 1; k <= l; ++k) {
        dp = dp * x + p;
        p = p * x + sign * f_[k];
        sign = -sign;
    }
}

MonicPoly MonicPoly::derivative() const {
    const int l = degree();
    if (l == 0) throw std::invalid_argument("MonicPoly: derivative of a constant");
    std::vector<double> g(l);
    for (int k = 0; k < l; ++k) g[k] = f_[k] * static_cast<double>(l - k) / static_cast<double>(l);
    return MonicPoly(std::move(g));
}

EsymTable elementary_symmetric_all(const RootSet& roots, int k_max) {
    if (k_max < 0) throw std::invalid_argument("elementary_symmetric_all: k_max must be >= 0");
    const std::size_t n = roots.n();
    std::vector<double> v(static_cast<std::size_t>(k_max) + 1, 0.0);
    std::vector<double> c(static_cast<std::size_t>(k_max) + 1, 0.0);
    v[0] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double x = roots[j];
        const int top = static_cast<int>(std::min<std::size_t>(j + 1, static_cast<std::size_t>(k_max)));
        for (int k = top; k >= 1; --k) {
            double p, pe, s, se;
            two_prod(v[k - 1], x, p, pe);
            two_sum(v[k], p, s, se);
            v[k] = s;
            c[k] += (pe + se) + x * c[k - 1];
        }
    }
    EsymTable table;
    table.k_max = k_max;
    table.n = n;
    table.e.resize(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) table.e[k] = v[k] + c[k];
    table.e[0] = 1.0;
    return table;
}

double power_sum(const RootSet& roots, int k) {
    if (k < 1) throw std::invalid_argument("power_sum: k must be >= 1");
    CompensatedSum s;
    for (double x : roots.roots()) s.add(pow_int(x, k));
    return s.value();
}

std::vector<double> power_sums_from_esym(const MonicPoly& poly, int m_max) {
    if (m_max < 1) throw std::invalid_argument("power_sums_from_esym: m_max must be >= 1");
    const int l = poly.degree();
    const std::vector<double>& f = poly.f();
    std::vector<double> q(static_cast<std::size_t>(m_max) + 1, 0.0);
    for (int m = 1; m <= m_max; ++m) {
        CompensatedSum acc;
        double sign = 1.0;
        const int top = std::min(m - 1, l);
        for (int i = 1; i <= top; ++i) {
            acc.add(sign * f[i] * q[m - i]);
            sign = -sign;
        }
        if (m <= l) acc.add(sign * static_cast<double>(m) * f[m]);
        q[m] = acc.value();
    }
    return std::vector<double>(q.begin() + 1, q.end());
}

MonicPoly scaled_derivative_coeffs(const RootSet& roots, int ell) {
    const std::size_t n = roots.n();
    if (ell < 1 || static_cast<std::size_t>(ell) > n)
        throw std::invalid_argument("scaled_derivative_coeffs: require 1 <= l <= n");
    const EsymTable e = elementary_symmetric_all(roots, ell);
    std::vector<double> f(static_cast<std::size_t>(ell) + 1);
    f[0] = 1.0;
    double ratio = 1.0; // l!(n-k)! / ((l-k)! n!) accumulated as products of ratios
    for (int k = 1; k <= ell; ++k) {
        ratio *= static_cast<double>(ell - k + 1) / static_cast<double>(n - static_cast<std::size_t>(k) + 1);
        f[k] = e[k] * ratio;
    }
    return MonicPoly(std::move(f));
}

double hermite_eval(HermiteKind kind, int ell, double x) {
    if (ell < 0) throw std::invalid_argument("hermite_eval: l must be >= 0");
    if (ell == 0) return 1.0;
    const bool phys = (kind == HermiteKind::physicists);
    double prev = 1.0;
    double cur = phys ? 2.0 * x : x;
    for (int k = 1; k < ell; ++k) {
        const double next = phys ? 2.0 * x * cur - 2.0 * k * prev : x * cur - k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace detail {

double hermite_newton_step(int ell, double x) {
    if (ell < 1) throw std::invalid_argument("hermite_newton_step: l must be >= 1");
    double prev = 1.0; // He_{k-1}, rescaled
    double cur = x;    // He_k, rescaled
    for (int k = 1; k < ell; ++k) {
        const double next = x * cur - k * prev;
        prev = cur;
        cur = next;
        // Power-of-two rescaling keeps the pair in range without touching
        // the ratio; |He_l| overflows double far below l = 2000 otherwise.
        if (std::abs(cur) > 0x1p+832) {
            cur *= 0x1p-896;
            prev *= 0x1p-896;
        }
    }
    // He_l'(x) = l * He_{l-1}(x)
    return cur / (static_cast<double>(ell) * prev);
}

void symmetric_tridiagonal_eigenvalues(std::vector<double>& diag, std::vector<double>& off) {
    const int n = static_cast<int>(diag.size());
    if (n == 0) return;
    if (off.size() + 1 != diag.size())
        throw std::invalid_argument("symmetric_tridiagonal_eigenvalues: off size must be n-1");
    std::vector<double> e(off);
    e.push_back(0.0);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw NumericalError("tridiagonal QL: too many iterations", -1, l);
                double g = (diag[l + 1] - diag[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = diag[m] - diag[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        diag[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = diag[i + 1] - p;
                    r = (diag[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    diag[i + 1] = g + p;
                    g = c * r - b;
                }
                if (i >= l) continue; // deflated mid-sweep, restart
                diag[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

} // namespace detail

RootSet hermite_roots(int ell) {
    if (ell < 1) throw std::invalid_argument("hermite_roots: l must be >= 1");
    std::vector<double> diag(static_cast<std::size_t>(ell), 0.0);
    std::vector<double> off(static_cast<std::size_t>(ell) - 1);
    for (int k = 1; k < ell; ++k) off[k - 1] = std::sqrt(static_cast<double>(k));
    detail::symmetric_tridiagonal_eigenvalues(diag, off);
    std::sort(diag.begin(), diag.end());
    for (double& r : diag) {
        for (int it = 0; it < 8; ++it) {
            const double step = detail::hermite_newton_step(ell, r);
            if (!std::isfinite(step)) break;
            r -= step;
            if (std::abs(step) <= 4e-16 * (1.0 + std::abs(r))) break;
        }
    }
    std::sort(diag.begin(), diag.end());
    return RootSet(std::move(diag));
}

double hermite_addition_eval(int ell, double a, double b) {
    if (ell < 0) throw std::invalid_argument("hermite_addition_eval: l must be >= 0");
    CompensatedSum acc;
    double binom = 1.0;
    double he_prev = 0.0;
    double he_cur = 1.0; // He_0(b)
    for (int k = 0; k <= ell; ++k) {
        acc.add(binom * pow_int(a, ell - k) * he_cur);
        const double he_next = b * he_cur - k * he_prev;
        he_prev = he_cur;
        he_cur = he_next;
        binom *= static_cast<double>(ell - k) / static_cast<double>(k + 1);
    }
    return acc.value();
}

namespace {

// One root of `poly` inside (lo, hi), where p(lo) and p(hi) have opposite
// signs: bisection to ulp width, then two guarded Newton steps.
double bracketed_root(const MonicPoly& poly, double lo, double hi, double plo) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double pm = poly.eval(mid);
        if (pm == 0.0) return mid;
        if ((pm > 0.0) == (plo > 0.0)) {
            lo = mid;
            plo = pm;
        } else {
            hi = mid;
        }
    }
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 2; ++it) {
        double p, dp;
        poly.eval_with_derivative(r, p, dp);
        if (dp == 0.0) break;
        const double next = r - p / dp;
        if (!(next >= lo && next <= hi)) break;
        r = next;
    }
    return r;
}

} // namespace

RootSet monic_real_roots(const MonicPoly& poly) {
    const int l = poly.degree();
    if (l == 0) return RootSet(std::vector<double>{});
    if (l == 1) return RootSet(std::vector<double>{poly.f()[1]});

    const RootSet crit = monic_real_roots(poly.derivative());
    double bound = 0.0;
    for (double a : poly.standard_coeffs()) bound = std::max(bound, std::abs(a));
    bound += 1.0; // Cauchy bound for a monic polynomial

    std::vector<double> brackets;
    brackets.reserve(static_cast<std::size_t>(l) + 1);
    brackets.push_back(std::min(-bound, crit.empty() ? -bound : crit.min() - 1.0));
    for (double c : crit.roots()) brackets.push_back(c);
    brackets.push_back(std::max(bound, crit.empty() ? bound : crit.max() + 1.0));

    std::vector<double> roots;
    roots.reserve(static_cast<std::size_t>(l));
    for (std::size_t i = 0; i + 1 < brackets.size(); ++i) {
        const double lo = brackets[i];
        const double hi = brackets[i + 1];
        const double plo = poly.eval(lo);
        const double phi = poly.eval(hi);
        if (plo == 0.0) throw NumericalError("monic_real_roots: repeated root at bracket");
        if ((plo > 0.0) == (phi > 0.0))
            throw NumericalError("monic_real_roots: no sign change in bracket", -1,
                                 static_cast<long>(i));
        roots.push_back(bracketed_root(poly, lo, hi, plo));
    }
    std::sort(roots.begin(), roots.end());
    return RootSet(std::move(roots));
}

} // namespace rootflow
