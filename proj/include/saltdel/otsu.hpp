#pragma once

#include <vector>

#include "saltdel/saliency.hpp"
#include "saltdel/volume.hpp"

namespace saltdel {

struct DegenerateHistogram : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Histogram {
    int bins = 0;
    std::vector<double> p;   // sums to 1
    double lo = 0.0;         // value of bin 0's left edge
    double hi = 0.0;         // value of the top bin's right edge

    double bin_width() const { return (hi - lo) / bins; }
};

struct ThresholdResult {
    int t_index = 0;      // first bin of the upper class
    double t_value = 0.0; // threshold in map units (left edge of bin t_index)
    double p1 = 0.0, p2 = 0.0;
    double mu1 = 0.0, mu2 = 0.0;       // class means, bin units
    double var1 = 0.0, var2 = 0.0;     // class variances, bin units
    std::vector<double> inter_class;   // objective per candidate T (index = T; 0 and H-1.. unused)
};

// Uniform-width bins over [min, max] of the fused map; the max value lands
// in the top bin. Throws DegenerateHistogram on a constant map.
Histogram build_histogram(const SaliencyMap& map, int bins);
Histogram build_histogram(const std::vector<double>& values, int bins);

// Exhaustive scan of T in [1, H-1] maximizing inter-class variance
// p1*p2*(mu1-mu2)^2. Ties break toward the smallest T.
ThresholdResult otsu_threshold(const Histogram& h);

// B[v] = 1 iff S[v] >= t.
BinaryVolume apply_threshold(const SaliencyMap& map, double t);

}  // namespace saltdel
