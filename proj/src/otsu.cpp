#include "saltdel/otsu.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace saltdel {

Histogram build_histogram(const std::vector<double>& values, int bins) {
    if (bins < 2) throw std::invalid_argument("build_histogram: need at least 2 bins");
    if (values.empty()) throw std::invalid_argument("build_histogram: empty input");
    double lo = values[0], hi = values[0];
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("build_histogram: non-finite value");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi) throw DegenerateHistogram("build_histogram: constant map, no contrast to split");
    Histogram h;
    h.bins = bins;
    h.lo = lo;
    h.hi = hi;
    h.p.assign(static_cast<std::size_t>(bins), 0.0);
    double scale = bins / (hi - lo);
    for (double v : values) {
        int b = std::min(static_cast<int>((v - lo) * scale), bins - 1);
        h.p[static_cast<std::size_t>(b)] += 1.0;
    }
    for (auto& q : h.p) q /= static_cast<double>(values.size());
    return h;
}

Histogram build_histogram(const SaliencyMap& map, int bins) {
    return build_histogram(map.fused, bins);
}

ThresholdResult otsu_threshold(const Histogram& h) {
    const int H = h.bins;
    double total = 0.0;
    for (double q : h.p) {
        if (q < 0) throw std::invalid_argument("otsu_threshold: negative probability");
        total += q;
    }
    if (total <= 0) throw std::invalid_argument("otsu_threshold: empty histogram");

    // cumulative mass and first moment, normalized so scaling p is a no-op
    std::vector<double> cum(static_cast<std::size_t>(H) + 1, 0.0);
    std::vector<double> cum_i(static_cast<std::size_t>(H) + 1, 0.0);
    for (int i = 0; i < H; ++i) {
        cum[i + 1] = cum[i] + h.p[i] / total;
        cum_i[i + 1] = cum_i[i] + i * h.p[i] / total;
    }

    int best_t = -1;
    double best_obj = -1.0;
    std::vector<double> curve(static_cast<std::size_t>(H), 0.0);
    for (int t = 1; t < H; ++t) {
        double p1 = cum[t], p2 = 1.0 - cum[t];
        if (p1 <= 0.0 || p2 <= 0.0) continue;
        double mu1 = cum_i[t] / p1;
        double mu2 = (cum_i[H] - cum_i[t]) / p2;
        double obj = p1 * p2 * (mu1 - mu2) * (mu1 - mu2);
        curve[static_cast<std::size_t>(t)] = obj;
        if (obj > best_obj) {
            best_obj = obj;
            best_t = t;
        }
    }
    if (best_t < 0)
        throw DegenerateHistogram("otsu_threshold: all mass in one bin");

    ThresholdResult r;
    r.t_index = best_t;
    r.t_value = h.lo + best_t * h.bin_width();
    r.inter_class = std::move(curve);
    r.p1 = cum[best_t];
    r.p2 = 1.0 - cum[best_t];
    r.mu1 = cum_i[best_t] / r.p1;
    r.mu2 = (cum_i[H] - cum_i[best_t]) / r.p2;
    double v1 = 0.0, v2 = 0.0;
    for (int i = 0; i < best_t; ++i) v1 += (i - r.mu1) * (i - r.mu1) * h.p[i] / total;
    for (int i = best_t; i < H; ++i) v2 += (i - r.mu2) * (i - r.mu2) * h.p[i] / total;
    r.var1 = v1 / r.p1;
    r.var2 = v2 / r.p2;
    return r;
}

BinaryVolume apply_threshold(const SaliencyMap& map, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("apply_threshold: non-finite threshold");
    BinaryVolume b = make_binary(map.dims);
    for (std::size_t i = 0; i < map.fused.size(); ++i) b.bits[i] = map.fused[i] >= t ? 1 : 0;
    return b;
}

}  // namespace saltdel
