#pragma once

#include <cstddef>
#include <vector>

namespace rootflow {

// Minimum admissible gap between neighbouring roots, relative to the spread.
// Below this, interlacing intervals are numerically empty.
inline constexpr double kMinSeparationRel = 1e-13;

// Sorted set of distinct real roots of a monic polynomial; the universal
// state of the differentiation dynamics. Values are strictly increasing,
// finite, and neighbouring gaps are at least kMinSeparationRel * spread.
class RootSet {
public:
    RootSet() = default;

    // Takes sorted, validated-on-entry values. Throws std::invalid_argument
    // on unsorted/non-finite input, NumericalError on sub-separation gaps.
    explicit RootSet(std::vector<double> sorted_roots);

    // Sorts, then resolves sub-separation gaps by pushing values apart
    // (deterministic left-to-right sweep). Used by samplers.
    static RootSet from_unsorted(std::vector<double> values);

    const std::vector<double>& roots() const { return roots_; }
    std::size_t n() const { return roots_.size(); }
    bool empty() const { return roots_.empty(); }
    double operator[](std::size_t i) const { return roots_[i]; }

    double min() const { return roots_.front(); }
    double max() const { return roots_.back(); }
    double spread() const { return empty() ? 0.0 : roots_.back() - roots_.front(); }
    double separation_floor() const { return kMinSeparationRel * spread(); }

    double mean() const;

private:
    std::vector<double> roots_;
};

// Sorted source positions with positive weights; the input of the weighted
// Cauchy-sum solver. Unit weights represent plain differentiation.
class SourceSet {
public:
    SourceSet() = default;
    SourceSet(std::vector<double> positions, std::vector<double> weights);

    // Unit-weight sources at the given roots.
    static SourceSet from_roots(const RootSet& roots);

    const std::vector<double>& positions() const { return positions_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t n() const { return positions_.size(); }

    double min() const { return positions_.front(); }
    double max() const { return positions_.back(); }
    double spread() const { return positions_.empty() ? 0.0 : positions_.back() - positions_.front(); }
    double separation_floor() const { return kMinSeparationRel * spread(); }

private:
    std::vector<double> positions_;
    std::vector<double> weights_;
};

} // namespace rootflow
