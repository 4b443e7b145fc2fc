#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace rootflow {

// Numerical failure (non-convergence, degenerate state). Argument errors use
// std::invalid_argument instead. `step` / `interval` are -1 when not known.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& msg, long step = -1, long interval = -1)
        : std::runtime_error(annotate(msg, step, interval)), step_(step), interval_(interval) {}

    long step() const { return step_; }
    long interval() const { return interval_; }

private:
    static std::string annotate(const std::string& msg, long step, long interval) {
        std::string s = msg;
        if (step >= 0) s += " [step " + std::to_string(step) + "]";
        if (interval >= 0) s += " [interval " + std::to_string(interval) + "]";
        return s;
    }
    long step_;
    long interval_;
};

// Error-free transforms (Knuth two-sum, FMA two-product).
inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    const double t = s - a;
    e = (a - (s - t)) + (b - t);
}

inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        double s, e;
        two_sum(sum_, x, s, e);
        sum_ = s;
        comp_ += e;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// x^k by binary exponentiation, k >= 0.
inline double pow_int(double x, long k) {
    double result = 1.0;
    double base = x;
    while (k > 0) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

} // namespace rootflow
