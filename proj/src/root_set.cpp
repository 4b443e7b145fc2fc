#include "rootflow/root_set.hpp"

#include "rootflow/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rootflow {

namespace {

void check_finite_sorted(const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) throw std::invalid_argument("RootSet: non-finite value");
        if (i > 0 && !(v[i] > v[i - 1]))
            throw std::invalid_argument("RootSet: values not strictly increasing");
    }
}

} // namespace

RootSet::RootSet(std::vector<double> sorted_roots) : roots_(std::move(sorted_roots)) {
    check_finite_sorted(roots_);
    if (roots_.size() >= 2) {
        const double floor = separation_floor();
        for (std::size_t i = 1; i < roots_.size(); ++i) {
            if (roots_[i] - roots_[i - 1] < floor)
                throw NumericalError("RootSet: gap below separation floor", -1,
                                     static_cast<long>(i - 1));
        }
    }
}

RootSet RootSet::from_unsorted(std::vector<double> values) {
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("RootSet: non-finite value");
    std::sort(values.begin(), values.end());
    if (values.size() >= 2) {
        const double floor = kMinSeparationRel * (values.back() - values.front());
        if (floor > 0.0) {
            for (std::size_t i = 1; i < values.size(); ++i)
                if (values[i] - values[i - 1] < floor) values[i] = values[i - 1] + floor;
        } else if (values.back() == values.front()) {
            throw NumericalError("RootSet: all values coincide");
        }
    }
    return RootSet(std::move(values));
}

double RootSet::mean() const {
    CompensatedSum s;
    for (double r : roots_) s.add(r);
    return s.value() / static_cast<double>(roots_.size());
}

SourceSet::SourceSet(std::vector<double> positions, std::vector<double> weights)
    : positions_(std::move(positions)), weights_(std::move(weights)) {
    if (positions_.size() != weights_.size())
        throw std::invalid_argument("SourceSet: positions/weights length mismatch");
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        if (!std::isfinite(positions_[i]) || !std::isfinite(weights_[i]))
            throw std::invalid_argument("SourceSet: non-finite entry");
        if (weights_[i] <= 0.0) throw std::invalid_argument("SourceSet: weight must be positive");
        if (i > 0 && !(positions_[i] > positions_[i - 1]))
            throw std::invalid_argument("SourceSet: positions not strictly increasing");
    }
}

SourceSet SourceSet::from_roots(const RootSet& roots) {
    return SourceSet(roots.roots(), std::vector<double>(roots.n(), 1.0));
}

} // namespace rootflow
