// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each check re-derives its expectation from an independent oracle
// or a published property rather than from the library under test.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "saltdel/metrics.hpp"
#include "saltdel/morphology.hpp"
#include "saltdel/otsu.hpp"
#include "saltdel/phantom.hpp"
#include "saltdel/pipeline.hpp"
#include "saltdel/region_growing.hpp"
#include "saltdel/saliency.hpp"
#include "saltdel/volume_io.hpp"

using namespace saltdel;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int id, const char* name, bool ok, const std::string& detail = "") {
    std::printf("%s: criterion %d (%s)%s%s\n", ok ? "PASS" : "FAIL", id, name,
                detail.empty() ? "" : " - ", detail.c_str());
    if (!ok) ++failures;
}

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// ---- criterion 2 helpers -------------------------------------------------

SpectralCube dft3_direct(const std::vector<double>& f, int L) {
    SpectralCube out;
    out.side = L;
    out.coeff.assign(static_cast<std::size_t>(L) * L * L, {});
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int c = 0; c < L; ++c)
        for (int b = 0; b < L; ++b)
            for (int a = 0; a < L; ++a) {
                std::complex<double> acc{};
                for (int z = 0; z < L; ++z)
                    for (int y = 0; y < L; ++y)
                        for (int x = 0; x < L; ++x) {
                            double ph = two_pi *
                                        (static_cast<double>(a) * x / L +
                                         static_cast<double>(b) * y / L +
                                         static_cast<double>(c) * z / L);
                            acc += f[(static_cast<std::size_t>(z) * L + y) * L + x] *
                                   std::complex<double>(std::cos(ph), -std::sin(ph));
                        }
                out.coeff[(static_cast<std::size_t>(c) * L + b) * L + a] =
                    acc / static_cast<double>(L * L * L);
            }
    return out;
}

// ---- criterion 4 helpers -------------------------------------------------

int scan_intra(const std::vector<double>& p) {
    const int H = static_cast<int>(p.size());
    int best_t = -1;
    double best = 0.0;
    for (int t = 1; t < H; ++t) {
        double p1 = 0, p2 = 0, m1 = 0, m2 = 0;
        for (int i = 0; i < t; ++i) p1 += p[i], m1 += i * p[i];
        for (int i = t; i < H; ++i) p2 += p[i], m2 += i * p[i];
        if (p1 <= 0 || p2 <= 0) continue;
        m1 /= p1;
        m2 /= p2;
        double v = 0;
        for (int i = 0; i < t; ++i) v += (i - m1) * (i - m1) * p[i];
        for (int i = t; i < H; ++i) v += (i - m2) * (i - m2) * p[i];
        if (best_t < 0 || v < best - 1e-15) best = v, best_t = t;
    }
    return best_t;
}

int scan_inter(const std::vector<double>& p) {
    const int H = static_cast<int>(p.size());
    int best_t = -1;
    double best = -1.0;
    for (int t = 1; t < H; ++t) {
        double p1 = 0, p2 = 0, m1 = 0, m2 = 0;
        for (int i = 0; i < t; ++i) p1 += p[i], m1 += i * p[i];
        for (int i = t; i < H; ++i) p2 += p[i], m2 += i * p[i];
        if (p1 <= 0 || p2 <= 0) continue;
        double d = m1 / p1 - m2 / p2;
        double obj = p1 * p2 * d * d;
        if (obj > best + 1e-15) best = obj, best_t = t;
    }
    return best_t;
}

// ---- criterion 5 helper --------------------------------------------------

BinaryVolume flood(const BinaryVolume& b, const SeedSet& seeds, Connectivity conn) {
    BinaryVolume out = make_binary(b.dims);
    std::queue<VoxelIndex> q;
    for (const auto& s : seeds)
        if (!out.bits[linear_index(b.dims, s)]) {
            out.bits[linear_index(b.dims, s)] = 1;
            q.push(s);
        }
    while (!q.empty()) {
        VoxelIndex v = q.front();
        q.pop();
        for (int dk = -1; dk <= 1; ++dk)
            for (int dn = -1; dn <= 1; ++dn)
                for (int dm = -1; dm <= 1; ++dm) {
                    if (!dm && !dn && !dk) continue;
                    if (conn == Connectivity::six && std::abs(dm) + std::abs(dn) + std::abs(dk) != 1)
                        continue;
                    VoxelIndex nb{v.m + dm, v.n + dn, v.k + dk};
                    if (!in_bounds(b.dims, nb)) continue;
                    std::size_t i = linear_index(b.dims, nb);
                    if (out.bits[i] || b.bits[i]) continue;
                    out.bits[i] = 1;
                    q.push(nb);
                }
    }
    return out;
}

// ---- criterion 7 helper --------------------------------------------------

double frechet_exhaustive(const BoundaryPolyline& a, const BoundaryPolyline& b,
                          std::size_t i, std::size_t j) {
    double d = std::hypot(a.points[i][0] - b.points[j][0], a.points[i][1] - b.points[j][1]);
    if (i == 0 && j == 0) return d;
    double best = std::numeric_limits<double>::infinity();
    if (i > 0) best = std::min(best, frechet_exhaustive(a, b, i - 1, j));
    if (j > 0) best = std::min(best, frechet_exhaustive(a, b, i, j - 1));
    if (i > 0 && j > 0) best = std::min(best, frechet_exhaustive(a, b, i - 1, j - 1));
    return std::max(best, d);
}

// ---- criteria 8-10 helpers -----------------------------------------------

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / "saltdel_acceptance" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::uint64_t hash_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

// hash of the data artifacts; config echo and wall-clock timing files are
// run-specific by nature and excluded
std::uint64_t hash_run_dir(const fs::path& dir) {
    std::uint64_t h = 0;
    for (const char* f :
         {"s.f32", "s.hdr", "b.u8", "b.hdr", "sd.u8", "sd.hdr", "sd_d.u8", "sd_d.hdr",
          "sd_b.u8", "sd_b.hdr", "polylines.csv", "threshold.txt"})
        h = h * 1000003ull + hash_file(dir / f);
    return h;
}

struct PhantomRun {
    PipelineResult result;
    double seconds = 0.0;
};

PhantomRun run_phantom(double noise, const fs::path& out, int threads) {
    PhantomSpec spec;
    spec.dims = {64, 64, 32};
    spec.semi_m = 24;
    spec.semi_n = 20;
    spec.semi_k = 12;
    spec.noise_amp = noise;
    spec.seed = 7;
    Phantom ph = generate_phantom(spec);

    fs::path refs = scratch(out.filename().string() + "_refs");
    save_mask(ph.mask, (refs / "ref.u8").string(), (refs / "ref.hdr").string());
    write_polylines((refs / "ref.csv").string(), ph.boundaries);

    RunConfig cfg;
    cfg.out_dir = out.string();
    cfg.seeds = {{51, 31, 15}};
    cfg.threads = threads;
    cfg.ref_mask_data = (refs / "ref.u8").string();
    cfg.ref_mask_header = (refs / "ref.hdr").string();
    cfg.ref_polylines = (refs / "ref.csv").string();

    PhantomRun r;
    double t0 = now();
    r.result = run_pipeline(ph.volume, cfg);
    r.seconds = now() - t0;
    return r;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

int main() {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);

    // 1. published comparison numbers ship as report fixtures only
    {
        const auto& fx = literature_fixtures();
        bool ok = false;
        for (const auto& r : fx)
            if (std::abs(r.acc_mean - 97.59) < 1e-9 && std::abs(r.salsim_mean - 0.9405) < 1e-9)
                ok = true;
        verdict(1, "published results are rendering fixtures, not recomputed", ok,
                "field-scale reference labels are unavailable; values render in report.txt");
    }

    // 2. spectral transform vs direct triple sum + Parseval
    {
        double t0 = now();
        double max_err = 0.0, max_pars = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            int L = trial % 2 ? 4 : 3;
            std::vector<double> f(static_cast<std::size_t>(L) * L * L);
            for (auto& v : f) v = sym(rng);
            SpectralCube got = dft3(f, L);
            SpectralCube want = dft3_direct(f, L);
            for (std::size_t i = 0; i < f.size(); ++i)
                max_err = std::max(max_err, std::abs(got.coeff[i] - want.coeff[i]));
            double lhs = 0.0, rhs = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                lhs += std::norm(got.coeff[i]);
                rhs += f[i] * f[i];
            }
            rhs /= f.size();
            max_pars = std::max(max_pars, std::abs(lhs - rhs) / rhs);
        }
        double dt = now() - t0;
        verdict(2, "spectral transform oracle", max_err < 1e-9 && max_pars < 1e-9 && dt < 5.0,
                "max err " + fmt(max_err * 1e9) + "e-9, Parseval " + fmt(max_pars * 1e9) +
                    "e-9 rel, " + fmt(dt) + " s");
    }

    // 3. decomposition weight identity and exact zero for constant input
    {
        bool ok = true;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            int L = 2 + trial % 5;
            int axis = trial % 3;
            for (int c = 0; c < L && ok; ++c)
                for (int b = 0; b < L && ok; ++b)
                    for (int a = 0; a < L && ok; ++a) {
                        auto [wt, ws] = decomposition_weights(a, b, c, L, axis);
                        if (a == 0 && b == 0 && c == 0) {
                            ok = wt == 0.0 && ws == 0.0;
                        } else {
                            ok = std::abs(wt * wt + ws * ws - 1.0) < 1e-12;
                        }
                    }
        }
        SeismicVolume flat;
        flat.dims = {9, 9, 9};
        flat.samples.assign(flat.dims.size(), 4.25f);
        SaliencyMap s = compute_saliency(flat, {});
        for (double v : s.fused) ok = ok && v == 0.0;
        verdict(3, "decomposition identity, constant volume exactly zero", ok);
    }

    // 4. threshold selection vs exhaustive scans of both objectives
    {
        double t0 = now();
        bool ok = true;
        for (int trial = 0; trial < 1000 && ok; ++trial) {
            std::vector<double> p(256);
            int c1 = static_cast<int>(rng() % 128), c2 = 128 + static_cast<int>(rng() % 128);
            double s = 0;
            for (int i = 0; i < 256; ++i) {
                double d1 = (i - c1) / (4.0 + 20.0 * uni(rng));
                double d2 = (i - c2) / (4.0 + 20.0 * uni(rng));
                p[i] = std::exp(-d1 * d1) + 0.8 * std::exp(-d2 * d2) + 0.02 * uni(rng);
                s += p[i];
            }
            for (auto& q : p) q /= s;
            Histogram h;
            h.bins = 256;
            h.lo = 0;
            h.hi = 1;
            h.p = p;
            int t = otsu_threshold(h).t_index;
            ok = t == scan_inter(p) && t == scan_intra(p);
        }
        double dt = now() - t0;
        verdict(4, "threshold oracle, both objectives", ok && dt < 5.0, fmt(dt) + " s");
    }

    // 5. region growing vs independent flood fill + multi-seed union
    {
        bool ok = true;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            Dims d{16, 16, 16};
            BinaryVolume walls = make_binary(d);
            for (auto& bit : walls.bits) bit = uni(rng) < 0.3 ? 1 : 0;
            auto pick = [&] {
                VoxelIndex v;
                do {
                    v = {static_cast<int>(rng() % 16), static_cast<int>(rng() % 16),
                         static_cast<int>(rng() % 16)};
                } while (walls.bits[linear_index(d, v)]);
                return v;
            };
            VoxelIndex a = pick(), b = pick();
            Connectivity conn = trial % 2 ? Connectivity::six : Connectivity::twenty_six;
            ok = grow_binary(walls, {a}, conn).bits == flood(walls, {a}, conn).bits;
            if (ok && !(a == b)) {
                BinaryVolume both = grow_binary(walls, {a, b}, conn);
                BinaryVolume ua = grow_binary(walls, {a}, conn);
                BinaryVolume ub = grow_binary(walls, {b}, conn);
                for (std::size_t i = 0; i < both.bits.size() && ok; ++i)
                    ok = both.bits[i] == (ua.bits[i] | ub.bits[i]);
            }
        }
        verdict(5, "region-growing oracle and union property", ok);
    }

    // 6. morphology set-definition oracles
    {
        bool ok = true;
        StructuringElement se = StructuringElement::cube(3);
        for (int trial = 0; trial < 100 && ok; ++trial) {
            Dims d{8, 8, 8};
            BinaryVolume m = make_binary(d);
            for (auto& bit : m.bits) bit = uni(rng) < 0.35 ? 1 : 0;
            BinaryVolume dd = make_binary(d), pp = make_binary(d);
            for (int k = 0; k < 8; ++k)
                for (int n = 0; n < 8; ++n)
                    for (int mm = 0; mm < 8; ++mm) {
                        bool hit = false, per = false, on = false;
                        for (int dk = -1; dk <= 1 && !hit; ++dk)
                            for (int dn = -1; dn <= 1 && !hit; ++dn)
                                for (int dm = -1; dm <= 1 && !hit; ++dm) {
                                    int am = mm + dm, an = n + dn, ak = k + dk;
                                    if (am < 0 || am > 7 || an < 0 || an > 7 || ak < 0 || ak > 7)
                                        continue;
                                    if (m.at(am, an, ak)) hit = true;
                                }
                        dd.at(mm, n, k) = hit ? 1 : 0;
                        if (m.at(mm, n, k)) {
                            for (int dk = -1; dk <= 1; ++dk)
                                for (int dn = -1; dn <= 1; ++dn)
                                    for (int dm = -1; dm <= 1; ++dm) {
                                        if (!dm && !dn && !dk) continue;
                                        int am = mm + dm, an = n + dn, ak = k + dk;
                                        if (am < 0 || am > 7 || an < 0 || an > 7 || ak < 0 ||
                                            ak > 7) {
                                            on = true;
                                            continue;
                                        }
                                        if (!m.at(am, an, ak)) per = true;
                                    }
                            pp.at(mm, n, k) = (per || on) ? 1 : 0;
                        }
                    }
            ok = dilate(m, se).bits == dd.bits && perimeter(m).bits == pp.bits;
        }
        BinaryVolume cube5 = make_binary({9, 9, 9});
        for (int k = 2; k <= 6; ++k)
            for (int n = 2; n <= 6; ++n)
                for (int m = 2; m <= 6; ++m) cube5.at(m, n, k) = 1;
        ok = ok && perimeter(cube5).count() == 98;
        verdict(6, "morphology oracles, 5^3 cube perimeter = 98", ok);
    }

    // 7. metric identities and oracles
    {
        bool ok = true;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            ConfusionCounts c{rng() % 40 + 1, rng() % 40, rng() % 40, rng() % 40};
            PixelMetrics pm = pixel_metrics(c);
            ok = *pm.f_score == 2.0 * *pm.precision * *pm.recall / (*pm.precision + *pm.recall);
        }
        auto rand_line = [&](std::size_t n) {
            BoundaryPolyline p;
            while (p.points.size() < n) {
                std::array<double, 2> c{10 * uni(rng), 10 * uni(rng)};
                if (p.points.empty() ||
                    std::hypot(c[0] - p.points.back()[0], c[1] - p.points.back()[1]) > 1e-9)
                    p.points.push_back(c);
            }
            return p;
        };
        for (int trial = 0; trial < 50 && ok; ++trial) {
            BoundaryPolyline a = rand_line(3 + rng() % 6), b = rand_line(3 + rng() % 6);
            double dp = frechet_distance(a, b);
            double ex = frechet_exhaustive(a, b, a.points.size() - 1, b.points.size() - 1);
            ok = std::abs(dp - ex) < 1e-12;
        }
        BoundaryPolyline self = rand_line(12);
        ok = ok && salsim(self, self, 64, 64) == 1.0 && curved(self, self) == 0.0;
        BoundaryPolyline circ;
        double r = 7.0;
        for (int i = 0; i < 64; ++i) {
            double a = 2.0 * std::acos(-1.0) * i / 64;
            circ.points.push_back({r * std::cos(a), r * std::sin(a)});
        }
        auto prof = curvature_profile(circ);
        for (std::size_t i = 2; i + 2 < prof.size() && ok; ++i)
            ok = std::abs(prof[i] - 1.0 / r) < 0.05 / r;
        verdict(7, "metric identities and Frechet coupling oracle", ok);
    }

    // 8. end-to-end phantom quality, noise-free and noisy, single-threaded
    {
        PhantomRun clean = run_phantom(0.0, scratch("e2e_clean"), 1);
        PhantomRun noisy = run_phantom(0.1, scratch("e2e_noisy"), 1);
        bool have = clean.result.report.has_value() && noisy.result.report.has_value();
        double acc0 = have ? clean.result.report->accuracy.mean : 0;
        double f0 = have ? clean.result.report->f_score.mean : 0;
        double s0 = have ? clean.result.report->salsim.mean : 0;
        double acc1 = have ? noisy.result.report->accuracy.mean : 0;
        double f1 = have ? noisy.result.report->f_score.mean : 0;
        double s1 = have ? noisy.result.report->salsim.mean : 0;
        bool ok = have && acc0 >= 0.95 && f0 >= 0.90 && s0 >= 0.90 && acc1 >= 0.95 &&
                  f1 >= 0.85 && s1 >= 0.90 && clean.seconds < 30.0 && noisy.seconds < 30.0 &&
                  !clean.result.leakage && !noisy.result.leakage;
        verdict(8, "end-to-end phantom quality", ok,
                "clean acc " + fmt(acc0) + " f " + fmt(f0) + " salsim " + fmt(s0) + "; noisy acc " +
                    fmt(acc1) + " f " + fmt(f1) + " salsim " + fmt(s1) + "; " +
                    fmt(clean.seconds) + "+" + fmt(noisy.seconds) + " s");
    }

    // 9. determinism across repeated runs and thread budgets
    {
        fs::path d1 = scratch("det_a"), d2 = scratch("det_b"), d4 = scratch("det_c");
        run_phantom(0.05, d1, 1);
        run_phantom(0.05, d2, 1);
        run_phantom(0.05, d4, 4);
        std::uint64_t h1 = hash_run_dir(d1), h2 = hash_run_dir(d2), h4 = hash_run_dir(d4);
        verdict(9, "hash-identical data artifacts across runs and thread budgets",
                h1 == h2 && h1 == h4);
    }

    // 10. performance sanity on a 128x128x64 volume, single-threaded
    {
        PhantomSpec spec;
        spec.dims = {128, 128, 64};
        spec.semi_m = 48;
        spec.semi_n = 40;
        spec.semi_k = 24;
        spec.seed = 11;
        Phantom ph = generate_phantom(spec);
        RunConfig cfg;
        cfg.out_dir = scratch("perf").string();
        cfg.seeds = {{100, 63, 31}};
        cfg.threads = 1;
        double t0 = now();
        PipelineResult res = run_pipeline(ph.volume, cfg);
        double dt = now() - t0;
        std::printf("  stage timings (s): saliency %.4f, threshold %.4f, growing %.4f, "
                    "post %.4f, metrics %.4f, total %.4f\n",
                    res.timings.saliency, res.timings.threshold, res.timings.growing,
                    res.timings.post, res.timings.metrics, res.timings.total);
        verdict(10, "128x128x64 pipeline under 60 s single-threaded", dt < 60.0,
                fmt(dt) + " s");
    }

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
