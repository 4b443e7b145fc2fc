#pragma once

#include <vector>

namespace rootflow {

struct Histogram {
    std::vector<double> bin_edges; // strictly increasing, size counts+1
    std::vector<long> counts;
    long total = 0;
};

// Equal-width bins spanning [min, max], right-closed last bin, every value
// counted exactly once. A constant sample gets a unit-width bin around it.
Histogram histogram(const std::vector<double>& values, int bins);

// CDF of the Wigner semicircle of the given radius.
double semicircle_cdf(double radius, double x);

// Kolmogorov-Smirnov distance between the empirical CDF of the values
// (centered to mean 0) and the semicircle of radius 2*sigma, whose variance
// matches the sample's.
double semicircle_distance(const std::vector<double>& values);

} // namespace rootflow
