#pragma once

#include <optional>
#include <vector>

#include "saltdel/polyline.hpp"
#include "saltdel/volume.hpp"

namespace saltdel {

struct ConfusionCounts {
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
    std::size_t total() const { return tp + tn + fp + fn; }
};

struct PixelMetrics {
    double accuracy = 0.0;
    std::optional<double> precision;  // absent when TP+FP = 0
    std::optional<double> recall;     // absent when TP+FN = 0
    std::optional<double> f_score;    // absent when precision or recall is
};

// Voxelwise comparison of one inline section (fixed k); salt = 1 is the
// positive class.
ConfusionCounts confusion(const BinaryVolume& pred, const BinaryVolume& ref, int k);

PixelMetrics pixel_metrics(const ConfusionCounts& c);

// Discrete Fréchet distance between two point sequences (standard dynamic
// program, Euclidean ground distance).
double frechet_distance(const BoundaryPolyline& a, const BoundaryPolyline& b);

// 1 - d_F / slice diagonal, clamped to [0,1]. Extents are the slice's
// (crossline, time) spans in voxels.
double salsim(const BoundaryPolyline& a, const BoundaryPolyline& b, double extent_n,
              double extent_m);

// Uniform arc-length resampling to `samples` points.
BoundaryPolyline resample(const BoundaryPolyline& p, int samples);

// Discrete curvature magnitude per interior point of the moving-average
// smoothed curve (circumradius of consecutive point triples).
std::vector<double> curvature_profile(const BoundaryPolyline& p, int smoothing_window = 5);

// alpha * d_F + beta * mean |curvature difference| over a common 128-point
// arc-length resampling. Zero for identical curves, near zero for similar
// shape and curvedness.
double curved(const BoundaryPolyline& a, const BoundaryPolyline& b, double alpha = 1.0,
              double beta = 1.0);

struct MetricRow {
    int inline_id = 0;
    std::optional<PixelMetrics> pixels;  // absent when no reference mask was given
    std::optional<double> salsim;
    std::optional<double> curved;
};

struct MetricAggregate {
    double mean = 0.0;
    double sd = 0.0;  // population formula
    std::size_t count = 0;
    std::size_t excluded = 0;  // rows where the metric was undefined
};

struct MetricsReport {
    std::vector<MetricRow> rows;
    MetricAggregate accuracy, precision, recall, f_score, salsim, curved;
};

MetricsReport aggregate(std::vector<MetricRow> rows);

}  // namespace saltdel
