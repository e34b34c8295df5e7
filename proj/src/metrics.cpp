#include "saltdel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace saltdel {
namespace {

double dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    double dx = a[0] - b[0], dy = a[1] - b[1];
    return std::sqrt(dx * dx + dy * dy);
}

void check_polyline(const BoundaryPolyline& p) {
    if (p.points.size() < 2) throw std::invalid_argument("polyline needs at least 2 points");
}

}  // namespace

ConfusionCounts confusion(const BinaryVolume& pred, const BinaryVolume& ref, int k) {
    if (!(pred.dims == ref.dims)) throw std::invalid_argument("confusion: dims mismatch");
    if (k < 0 || k >= pred.dims.k) throw std::out_of_range("confusion: inline out of range");
    ConfusionCounts c;
    for (int n = 0; n < pred.dims.n; ++n)
        for (int m = 0; m < pred.dims.m; ++m) {
            bool p = pred.at(m, n, k) != 0;
            bool r = ref.at(m, n, k) != 0;
            if (p && r)
                ++c.tp;
            else if (!p && !r)
                ++c.tn;
            else if (p && !r)
                ++c.fp;
            else
                ++c.fn;
        }
    return c;
}

PixelMetrics pixel_metrics(const ConfusionCounts& c) {
    if (c.total() == 0) throw std::invalid_argument("pixel_metrics: empty confusion counts");
    PixelMetrics m;
    m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    if (c.tp + c.fp > 0)
        m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    if (c.tp + c.fn > 0)
        m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    if (m.precision && m.recall && (*m.precision + *m.recall) > 0)
        m.f_score = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
    return m;
}

double frechet_distance(const BoundaryPolyline& a, const BoundaryPolyline& b) {
    check_polyline(a);
    check_polyline(b);
    const std::size_t P = a.points.size(), Q = b.points.size();
    std::vector<double> prev(Q), cur(Q);
    for (std::size_t j = 0; j < Q; ++j) {
        double d = dist(a.points[0], b.points[j]);
        prev[j] = j == 0 ? d : std::max(prev[j - 1], d);
    }
    for (std::size_t i = 1; i < P; ++i) {
        cur[0] = std::max(prev[0], dist(a.points[i], b.points[0]));
        for (std::size_t j = 1; j < Q; ++j) {
            double reach = std::min({prev[j], prev[j - 1], cur[j - 1]});
            cur[j] = std::max(reach, dist(a.points[i], b.points[j]));
        }
        std::swap(prev, cur);
    }
    return prev[Q - 1];
}

double salsim(const BoundaryPolyline& a, const BoundaryPolyline& b, double extent_n,
              double extent_m) {
    double diag = std::sqrt(extent_n * extent_n + extent_m * extent_m);
    if (diag <= 0) throw std::invalid_argument("salsim: non-positive slice extents");
    double s = 1.0 - frechet_distance(a, b) / diag;
    return std::clamp(s, 0.0, 1.0);
}

BoundaryPolyline resample(const BoundaryPolyline& p, int samples) {
    check_polyline(p);
    if (samples < 2) throw std::invalid_argument("resample: need at least 2 samples");
    std::vector<double> arclen(p.points.size(), 0.0);
    for (std::size_t i = 1; i < p.points.size(); ++i)
        arclen[i] = arclen[i - 1] + dist(p.points[i - 1], p.points[i]);
    double total = arclen.back();
    BoundaryPolyline out;
    out.closed = p.closed;
    out.points.reserve(static_cast<std::size_t>(samples));
    if (total <= 0) {
        out.points.assign(static_cast<std::size_t>(samples), p.points[0]);
        return out;
    }
    std::size_t seg = 0;
    for (int s = 0; s < samples; ++s) {
        double target = total * s / (samples - 1);
        while (seg + 2 < p.points.size() && arclen[seg + 1] < target) ++seg;
        double span = arclen[seg + 1] - arclen[seg];
        double t = span > 0 ? (target - arclen[seg]) / span : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        out.points.push_back({p.points[seg][0] + t * (p.points[seg + 1][0] - p.points[seg][0]),
                              p.points[seg][1] + t * (p.points[seg + 1][1] - p.points[seg][1])});
    }
    return out;
}

std::vector<double> curvature_profile(const BoundaryPolyline& p, int smoothing_window) {
    if (p.points.size() < 3) throw std::invalid_argument("curvature_profile: need >= 3 points");
    if (smoothing_window < 1) throw std::invalid_argument("curvature_profile: bad window");

    // centered moving average, shrinking near the ends
    std::vector<std::array<double, 2>> sm(p.points.size());
    int half = smoothing_window / 2;
    for (std::size_t i = 0; i < p.points.size(); ++i) {
        int lo = std::max<int>(0, static_cast<int>(i) - half);
        int hi = std::min<int>(static_cast<int>(p.points.size()) - 1, static_cast<int>(i) + half);
        double sx = 0, sy = 0;
        for (int j = lo; j <= hi; ++j) {
            sx += p.points[static_cast<std::size_t>(j)][0];
            sy += p.points[static_cast<std::size_t>(j)][1];
        }
        double cnt = hi - lo + 1;
        sm[i] = {sx / cnt, sy / cnt};
    }

    std::vector<double> kappa;
    kappa.reserve(sm.size() - 2);
    for (std::size_t i = 1; i + 1 < sm.size(); ++i) {
        double ax = sm[i][0] - sm[i - 1][0], ay = sm[i][1] - sm[i - 1][1];
        double bx = sm[i + 1][0] - sm[i][0], by = sm[i + 1][1] - sm[i][1];
        double cx = sm[i + 1][0] - sm[i - 1][0], cy = sm[i + 1][1] - sm[i - 1][1];
        double la = std::hypot(ax, ay), lb = std::hypot(bx, by), lc = std::hypot(cx, cy);
        double cross = std::abs(ax * by - ay * bx);
        double denom = la * lb * lc;
        kappa.push_back(denom > 0 ? 2.0 * cross / denom : 0.0);
    }
    return kappa;
}

double curved(const BoundaryPolyline& a, const BoundaryPolyline& b, double alpha, double beta) {
    const int samples = 128;
    BoundaryPolyline ra = resample(a, samples);
    BoundaryPolyline rb = resample(b, samples);
    double df = frechet_distance(ra, rb);
    auto ka = curvature_profile(ra);
    auto kb = curvature_profile(rb);
    double acc = 0.0;
    for (std::size_t i = 0; i < ka.size(); ++i) acc += std::abs(ka[i] - kb[i]);
    return alpha * df + beta * acc / static_cast<double>(ka.size());
}

namespace {

MetricAggregate aggregate_one(const std::vector<MetricRow>& rows,
                              const std::function<std::optional<double>(const MetricRow&)>& get) {
    MetricAggregate agg;
    double sum = 0.0;
    for (const auto& r : rows) {
        auto v = get(r);
        if (!v) {
            ++agg.excluded;
            continue;
        }
        sum += *v;
        ++agg.count;
    }
    if (agg.count == 0) return agg;
    agg.mean = sum / static_cast<double>(agg.count);
    double sq = 0.0;
    for (const auto& r : rows) {
        auto v = get(r);
        if (v) sq += (*v - agg.mean) * (*v - agg.mean);
    }
    agg.sd = std::sqrt(sq / static_cast<double>(agg.count));
    return agg;
}

}  // namespace

MetricsReport aggregate(std::vector<MetricRow> rows) {
    if (rows.empty()) throw std::invalid_argument("aggregate: no rows");
    MetricsReport rep;
    rep.accuracy = aggregate_one(rows, [](const MetricRow& r) -> std::optional<double> {
        if (!r.pixels) return std::nullopt;
        return r.pixels->accuracy;
    });
    rep.precision = aggregate_one(rows, [](const MetricRow& r) -> std::optional<double> {
        return r.pixels ? r.pixels->precision : std::nullopt;
    });
    rep.recall = aggregate_one(rows, [](const MetricRow& r) -> std::optional<double> {
        return r.pixels ? r.pixels->recall : std::nullopt;
    });
    rep.f_score = aggregate_one(rows, [](const MetricRow& r) -> std::optional<double> {
        return r.pixels ? r.pixels->f_score : std::nullopt;
    });
    rep.salsim = aggregate_one(rows, [](const MetricRow& r) { return r.salsim; });
    rep.curved = aggregate_one(rows, [](const MetricRow& r) { return r.curved; });
    rep.rows = std::move(rows);
    return rep;
}

}  // namespace saltdel
