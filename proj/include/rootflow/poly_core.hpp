#pragma once

#include "rootflow/root_set.hpp"

#include <cstddef>
#include <vector>

namespace rootflow {

// Elementary symmetric polynomials e_0..e_k_max of a root set.
// e_0 = 1 and e_j = 0 for j > n.
struct EsymTable {
    std::vector<double> e;
    int k_max = 0;
    std::size_t n = 0;

    double operator[](std::size_t j) const { return e[j]; }
};

// Monic degree-l polynomial stored through its signed coefficients:
//   p(x) = sum_{k=0}^{l} (-1)^k f_k x^{l-k},   f_0 = 1.
// f_k is the k-th elementary symmetric polynomial of the roots of p.
class MonicPoly {
public:
    explicit MonicPoly(std::vector<double> f);

    int degree() const { return static_cast<int>(f_.size()) - 1; }
    const std::vector<double>& f() const { return f_; }

    // Coefficients a_0..a_l with p(x) = sum a_j x^j.
    std::vector<double> standard_coeffs() const;

    double eval(double x) const;
    void eval_with_derivative(double x, double& p, double& dp) const;

    // Monic normalization of the derivative, p'(x)/l.
    MonicPoly derivative() const;

private:
    std::vector<double> f_;
};

enum class HermiteKind { probabilists, physicists };

// --- elementary symmetric polynomials & power sums ---

// One-root-at-a-time recurrence e_k <- e_k + x*e_{k-1}, compensated with
// error-free transforms so large-n tables keep near-full precision.
EsymTable elementary_symmetric_all(const RootSet& roots, int k_max);

// x_1^k + ... + x_n^k, compensated. Requires k >= 1.
double power_sum(const RootSet& roots, int k);

// Power sums q_1..q_m_max of the roots of `poly`, by the Newton-identity
// recursion on the coefficients.
std::vector<double> power_sums_from_esym(const MonicPoly& poly, int m_max);

// Monic normalization (l!/n!) * p^(n-l) of the polynomial with the given
// roots: f_k = e_k * l!(n-k)! / ((l-k)! n!), k = 0..l. Factorial ratios are
// accumulated as products of ratios (n can be 1e5; raw factorials overflow).
MonicPoly scaled_derivative_coeffs(const RootSet& roots, int ell);

// --- Hermite polynomials ---

// He_l(x) via He_{k+1} = x He_k - k He_{k-1}, or H_l(x) via
// H_{k+1} = 2x H_k - 2k H_{k-1}. Rodrigues-consistent, so He_2(x) = x^2 - 1.
double hermite_eval(HermiteKind kind, int ell, double x);

// Sorted roots of He_l: eigenvalues of the zero-diagonal Jacobi matrix with
// off-diagonals sqrt(1..l-1), refined by Newton iteration on an
// overflow-scaled recurrence.
RootSet hermite_roots(int ell);

// sum_{k=0}^{l} C(l,k) a^{l-k} He_k(b); test oracle for the addition
// formula He_l(a+b) = hermite_addition_eval(l, a, b).
double hermite_addition_eval(int ell, double a, double b);

// --- dense root finding (coefficient route / small-n oracle) ---

// All real roots of a monic polynomial with simple real roots, by the
// derivative-chain bracketing: roots of p' split the line into intervals
// holding exactly one root of p each; bisection plus Newton polish inside.
RootSet monic_real_roots(const MonicPoly& poly);

namespace detail {

// Newton correction He_l(x) / (l * He_{l-1}(x)) with power-of-two rescaling
// of the recurrence pair, valid far beyond the overflow range of hermite_eval.
double hermite_newton_step(int ell, double x);

// Eigenvalues of a symmetric tridiagonal matrix by QL iteration with
// implicit shifts. diag has size n, off size n-1. Overwrites diag.
void symmetric_tridiagonal_eigenvalues(std::vector<double>& diag, std::vector<double>& off);

} // namespace detail

} // namespace rootflow
