#include "saltdel/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "saltdel/volume_io.hpp"

namespace saltdel {
namespace {

namespace fs = std::filesystem;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

VoxelIndex parse_seed(const std::string& s) {
    auto parts = split(s, ',');
    if (parts.size() != 3) throw ConfigError("seed must be m,n,k: " + s);
    try {
        return {std::stoi(parts[0]), std::stoi(parts[1]), std::stoi(parts[2])};
    } catch (const std::exception&) {
        throw ConfigError("seed must be integer m,n,k: " + s);
    }
}

}  // namespace

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("malformed config line: " + line);
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        try {
            if (key == "input")
                cfg.input = val;
            else if (key == "header")
                cfg.header = val;
            else if (key == "window")
                cfg.saliency.window = std::stoi(val);
            else if (key == "tiling")
                cfg.saliency.tiling = val == "slide" ? Tiling::slide : Tiling::tile;
            else if (key == "surround_radius")
                cfg.saliency.surround_radius = std::stoi(val);
            else if (key == "time_axis")
                cfg.saliency.time_axis = std::stoi(val);
            else if (key == "w_time") {
                cfg.saliency.w_time = std::stod(val);
                cfg.saliency.w_space = 1.0 - cfg.saliency.w_time;
            } else if (key == "threshold") {
                if (val != "auto") cfg.manual_threshold = std::stod(val);
            } else if (key == "seeds") {
                for (const auto& s : split(val, ';'))
                    if (!s.empty()) cfg.seeds.push_back(parse_seed(s));
            } else if (key == "connectivity")
                cfg.connectivity = std::stoi(val) == 26 ? Connectivity::twenty_six : Connectivity::six;
            else if (key == "se_side")
                cfg.se_side = std::stoi(val);
            else if (key == "out")
                cfg.out_dir = val;
            else if (key == "slices") {
                for (const auto& s : split(val, ','))
                    if (!s.empty()) cfg.slices.push_back(std::stoi(s));
            } else if (key == "threads")
                cfg.threads = std::stoi(val);
            else if (key == "ref_mask")
                cfg.ref_mask_data = val;
            else if (key == "ref_mask_header")
                cfg.ref_mask_header = val;
            else if (key == "ref_polylines")
                cfg.ref_polylines = val;
            else
                throw ConfigError("unknown config key: " + key);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("bad value for " + key + ": " + val);
        }
    }
    return cfg;
}

void write_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config echo: " + path);
    out << "input=" << cfg.input << "\n";
    out << "header=" << cfg.header << "\n";
    out << "window=" << cfg.saliency.window << "\n";
    out << "tiling=" << (cfg.saliency.tiling == Tiling::slide ? "slide" : "tile") << "\n";
    out << "surround_radius=" << cfg.saliency.surround_radius << "\n";
    out << "time_axis=" << cfg.saliency.time_axis << "\n";
    out << "w_time=" << cfg.saliency.w_time << "\n";
    out << "threshold=";
    if (cfg.manual_threshold)
        out << *cfg.manual_threshold << "\n";
    else
        out << "auto\n";
    out << "seeds=";
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
        if (i) out << ";";
        out << cfg.seeds[i].m << "," << cfg.seeds[i].n << "," << cfg.seeds[i].k;
    }
    out << "\n";
    out << "connectivity=" << static_cast<int>(cfg.connectivity) << "\n";
    out << "se_side=" << cfg.se_side << "\n";
    out << "out=" << cfg.out_dir << "\n";
    out << "slices=";
    for (std::size_t i = 0; i < cfg.slices.size(); ++i) {
        if (i) out << ",";
        out << cfg.slices[i];
    }
    out << "\n";
    out << "threads=" << cfg.threads << "\n";
    if (!cfg.ref_mask_data.empty()) out << "ref_mask=" << cfg.ref_mask_data << "\n";
    if (!cfg.ref_mask_header.empty()) out << "ref_mask_header=" << cfg.ref_mask_header << "\n";
    if (!cfg.ref_polylines.empty()) out << "ref_polylines=" << cfg.ref_polylines << "\n";
}

namespace {

void validate_config(const SeismicVolume& vol, const RunConfig& cfg) {
    if (cfg.out_dir.empty()) throw ConfigError("output directory not set");
    if (cfg.seeds.empty()) throw ConfigError("at least one seed point is required");
    for (const auto& s : cfg.seeds)
        if (!in_bounds(vol.dims, s))
            throw ConfigError("seed out of bounds: " + std::to_string(s.m) + "," +
                              std::to_string(s.n) + "," + std::to_string(s.k));
    for (int k : cfg.slices)
        if (k < 0 || k >= vol.dims.k)
            throw ConfigError("export slice out of range: " + std::to_string(k));
    if (cfg.manual_threshold && (*cfg.manual_threshold < 0 || *cfg.manual_threshold > 1))
        throw ConfigError("manual threshold must be in [0,1] (normalized saliency)");
    if (cfg.se_side < 1 || cfg.se_side % 2 == 0)
        throw ConfigError("structuring element side must be odd and >= 1");
    if (cfg.threads < 1) throw ConfigError("thread budget must be >= 1");
}

SeismicVolume grid_as_volume(const Dims& dims, const std::vector<double>& grid) {
    SeismicVolume v;
    v.dims = dims;
    v.samples.reserve(grid.size());
    for (double x : grid) v.samples.push_back(static_cast<float>(x));
    return v;
}

double face_fraction(const BinaryVolume& sd) {
    const Dims d = sd.dims;
    std::size_t face = 0, lit = 0;
    for (int k = 0; k < d.k; ++k)
        for (int n = 0; n < d.n; ++n)
            for (int m = 0; m < d.m; ++m) {
                if (m != 0 && m != d.m - 1 && n != 0 && n != d.n - 1 && k != 0 && k != d.k - 1)
                    continue;
                ++face;
                lit += sd.at(m, n, k);
            }
    return face ? static_cast<double>(lit) / static_cast<double>(face) : 0.0;
}

void write_threshold_info(const std::string& path, const PipelineResult& res, int bins) {
    std::ofstream out(path);
    out << "mode=" << (res.auto_threshold ? "auto" : "manual") << "\n";
    out << "threshold_value=" << std::setprecision(12) << res.threshold_value << "\n";
    if (res.auto_threshold) {
        out << "t_index=" << res.threshold.t_index << "\n";
        out << "bins=" << bins << "\n";
        out << "p1=" << res.threshold.p1 << "\np2=" << res.threshold.p2 << "\n";
        out << "mu1=" << res.threshold.mu1 << "\nmu2=" << res.threshold.mu2 << "\n";
        out << "var1=" << res.threshold.var1 << "\nvar2=" << res.threshold.var2 << "\n";
        out << "# inter-class objective per candidate threshold\n";
        for (std::size_t t = 1; t < res.threshold.inter_class.size(); ++t)
            out << t << " " << res.threshold.inter_class[t] << "\n";
    }
}

}  // namespace

PipelineResult run_pipeline(const SeismicVolume& volume, const RunConfig& cfg) {
    validate_config(volume, cfg);
    fs::create_directories(cfg.out_dir);
    auto path = [&](const std::string& name) { return (fs::path(cfg.out_dir) / name).string(); };
    write_config(cfg, path("config.txt"));

    SaliencyParams params = cfg.saliency;
    params.threads = cfg.threads;

    PipelineResult res;
    StageTimings& tm = res.timings;
    double t0 = now_seconds();

    // saliency
    double ts = now_seconds();
    SaliencyMap smap = compute_saliency(volume, params);
    tm.saliency = now_seconds() - ts;
    save_volume(grid_as_volume(smap.dims, smap.fused), path("s.f32"), path("s.hdr"));

    // threshold
    ts = now_seconds();
    const int bins = 256;
    if (cfg.manual_threshold) {
        double mx = 0.0;
        for (double v : smap.fused) mx = std::max(mx, v);
        res.threshold_value = *cfg.manual_threshold * mx;
        res.auto_threshold = false;
    } else {
        Histogram h = build_histogram(smap, bins);
        res.threshold = otsu_threshold(h);
        res.threshold_value = res.threshold.t_value;
        res.auto_threshold = true;
    }
    BinaryVolume b = apply_threshold(smap, res.threshold_value);
    tm.threshold = now_seconds() - ts;
    save_mask(b, path("b.u8"), path("b.hdr"));
    write_threshold_info(path("threshold.txt"), res, bins);

    // region growing
    ts = now_seconds();
    BinaryVolume sd = grow_binary(b, cfg.seeds, cfg.connectivity);
    res.leakage = face_fraction(sd) >= 0.25;
    tm.growing = now_seconds() - ts;
    save_mask(sd, path("sd.u8"), path("sd.hdr"));

    // post-processing
    ts = now_seconds();
    BinaryVolume sd_d = dilate(sd, StructuringElement::cube(cfg.se_side), cfg.threads);
    BinaryVolume sd_b = perimeter(sd_d, cfg.threads);
    // trace each inline's cross-section outline; slicing the volumetric
    // perimeter instead would sweep in flat crossline-facing patches wherever
    // the body's extent steps between adjacent inlines
    res.polylines = extract_polylines(slice_perimeter(sd_d));
    tm.post = now_seconds() - ts;
    save_mask(sd_d, path("sd_d.u8"), path("sd_d.hdr"));
    save_mask(sd_b, path("sd_b.u8"), path("sd_b.hdr"));
    write_polylines(path("polylines.csv"), res.polylines);
    res.boundary = std::move(sd_b);

    // metrics (optional)
    ts = now_seconds();
    std::optional<BinaryVolume> ref_mask;
    if (!cfg.ref_mask_data.empty()) {
        ref_mask = load_mask(cfg.ref_mask_data, cfg.ref_mask_header);
        if (!(ref_mask->dims == volume.dims))
            throw ConfigError("reference mask dims do not match the input volume");
    }
    std::vector<SlicePolyline> ref_lines;
    if (!cfg.ref_polylines.empty()) ref_lines = read_polylines(cfg.ref_polylines);

    if (ref_mask || !ref_lines.empty()) {
        auto find_line = [](const std::vector<SlicePolyline>& lines, int k) -> const SlicePolyline* {
            for (const auto& sp : lines)
                if (sp.k == k) return &sp;
            return nullptr;
        };
        std::vector<MetricRow> rows;
        for (int k = 0; k < volume.dims.k; ++k) {
            MetricRow row;
            row.inline_id = k;
            if (ref_mask) row.pixels = pixel_metrics(confusion(sd_d, *ref_mask, k));
            const SlicePolyline* ref_sp = find_line(ref_lines, k);
            const SlicePolyline* det_sp = find_line(res.polylines, k);
            if (ref_sp && det_sp && ref_sp->line.points.size() >= 2 &&
                det_sp->line.points.size() >= 2) {
                row.salsim = salsim(det_sp->line, ref_sp->line, volume.dims.n, volume.dims.m);
                if (ref_sp->line.points.size() >= 3 && det_sp->line.points.size() >= 3)
                    row.curved = curved(det_sp->line, ref_sp->line);
            }
            if (row.pixels || row.salsim) rows.push_back(std::move(row));
        }
        if (!rows.empty()) res.report = aggregate(std::move(rows));
    }
    tm.metrics = now_seconds() - ts;
    tm.total = now_seconds() - t0;

    if (res.report) {
        write_metrics_csv(*res.report, path("metrics.csv"));
        std::ofstream rep(path("report.txt"));
        rep << render_report(*res.report, tm, literature_fixtures());
        if (res.leakage)
            rep << "\nwarning: grown body reaches >= 25% of the outer faces; the "
                   "thresholded boundary shell probably has gaps\n";
    }
    write_timings(tm, path("timings.txt"));

    // slice renders with detected (green) and reference (red) overlays
    if (!cfg.slices.empty()) {
        std::vector<double> grid(volume.samples.begin(), volume.samples.end());
        for (int k : cfg.slices) {
            std::vector<Overlay> ov;
            ov.push_back({&res.polylines, 0, 255, 0});
            if (!ref_lines.empty()) ov.push_back({&ref_lines, 255, 0, 0});
            export_slice_image(volume.dims, grid, k, ov,
                               path("slice_" + std::to_string(k) + ".ppm"));
        }
    }
    return res;
}

void export_slice_image(const Dims& dims, const std::vector<double>& grid, int k,
                        const std::vector<Overlay>& overlays, const std::string& path) {
    if (k < 0 || k >= dims.k) throw std::out_of_range("export_slice_image: inline out of range");
    if (grid.size() != dims.size())
        throw std::invalid_argument("export_slice_image: grid size mismatch");

    double lo = grid[linear_index(dims, 0, 0, k)], hi = lo;
    for (int n = 0; n < dims.n; ++n)
        for (int m = 0; m < dims.m; ++m) {
            double v = grid[linear_index(dims, m, n, k)];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;

    // rows = time (m), columns = crossline (n)
    std::vector<std::uint8_t> rgb(static_cast<std::size_t>(dims.m) * dims.n * 3);
    for (int m = 0; m < dims.m; ++m)
        for (int n = 0; n < dims.n; ++n) {
            double v = grid[linear_index(dims, m, n, k)];
            auto g = static_cast<std::uint8_t>(scale > 0 ? (v - lo) * scale : 128.0);
            std::size_t px = (static_cast<std::size_t>(m) * dims.n + n) * 3;
            rgb[px] = rgb[px + 1] = rgb[px + 2] = g;
        }
    for (const auto& ov : overlays) {
        if (!ov.lines) continue;
        for (const auto& sp : *ov.lines) {
            if (sp.k != k) continue;
            for (const auto& p : sp.line.points) {
                int n = static_cast<int>(std::lround(p[0]));
                int m = static_cast<int>(std::lround(p[1]));
                if (m < 0 || m >= dims.m || n < 0 || n >= dims.n) continue;
                std::size_t px = (static_cast<std::size_t>(m) * dims.n + n) * 3;
                rgb[px] = ov.r;
                rgb[px + 1] = ov.g;
                rgb[px + 2] = ov.b;
            }
        }
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open image for write: " + path);
    out << "P6\n" << dims.n << " " << dims.m << "\n255\n";
    out.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
    if (!out) throw IoError("image write failed: " + path);
}

const std::vector<LiteratureRow>& literature_fixtures() {
    // Published values, not recomputed.
    static const std::vector<LiteratureRow> rows = {
        {"texture-got-2015", 96.32, 1.30, 96.40, 1.85, 0.9403, 0.0232, 0.8573, 0.0844, 21.5004,
         4.2859, 11.4895},
        {"texture-dissimilarity-2015", 97.35, 0.50, 94.86, 2.59, 0.9591, 0.0070, 0.9232, 0.0136,
         17.3355, 2.4872, 63.3162},
        {"texture-attributes-2013", 95.84, 4.75, 96.26, 1.77, 0.9239, 0.1085, 0.8439, 0.0730,
         45.9306, 19.7698, 33.5447},
        {"edge-detection-2011", 95.72, 1.22, 89.79, 3.20, 0.9361, 0.0176, 0.8845, 0.0605, 23.8682,
         4.8281, 0.98110},
        {"codebook-learning-2015", 96.69, 2.23, 95.26, 3.24, 0.9470, 0.0447, 0.8643, 0.0333,
         38.7502, 9.6533, 0.68480},
        {"saliency-workflow", 97.59, 0.45, 97.76, 1.19, 0.9616, 0.0072, 0.9405, 0.0095, 14.8835,
         2.4268, 0.39520},
    };
    return rows;
}

namespace {

std::string fmt_opt(const std::optional<double>& v) {
    if (!v) return "-";
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(4) << *v;
    return ss.str();
}

}  // namespace

std::string render_report(const MetricsReport& report, const StageTimings& timings,
                          const std::vector<LiteratureRow>& fixtures) {
    std::ostringstream out;
    out << "salt-dome delineation report\n";
    out << "============================\n\n";

    out << "per-inline metrics\n";
    out << std::left << std::setw(8) << "inline" << std::setw(10) << "accuracy" << std::setw(11)
        << "precision" << std::setw(8) << "recall" << std::setw(9) << "f_score" << std::setw(8)
        << "salsim" << std::setw(10) << "curved" << "\n";
    for (const auto& r : report.rows) {
        out << std::left << std::setw(8) << r.inline_id;
        if (r.pixels) {
            out << std::setw(10) << fmt_opt(r.pixels->accuracy) << std::setw(11)
                << fmt_opt(r.pixels->precision) << std::setw(8) << fmt_opt(r.pixels->recall)
                << std::setw(9) << fmt_opt(r.pixels->f_score);
        } else {
            out << std::setw(10) << "-" << std::setw(11) << "-" << std::setw(8) << "-"
                << std::setw(9) << "-";
        }
        out << std::setw(8) << fmt_opt(r.salsim) << std::setw(10) << fmt_opt(r.curved) << "\n";
    }

    out << "\naggregates (mean / sd, population formula; '-' = all rows undefined)\n";
    auto agg_line = [&](const char* name, const MetricAggregate& a) {
        out << std::left << std::setw(11) << name;
        if (a.count == 0) {
            out << "-\n";
            return;
        }
        out << std::fixed << std::setprecision(4) << a.mean << " / " << a.sd << "  (rows " << a.count;
        if (a.excluded) out << ", excluded " << a.excluded;
        out << ")\n";
    };
    agg_line("accuracy", report.accuracy);
    agg_line("precision", report.precision);
    agg_line("recall", report.recall);
    agg_line("f_score", report.f_score);
    agg_line("salsim", report.salsim);
    agg_line("curved", report.curved);

    out << "\nstage timings (wall-clock seconds)\n";
    out << std::fixed << std::setprecision(4);
    out << "saliency   " << timings.saliency << "\n";
    out << "threshold  " << timings.threshold << "\n";
    out << "growing    " << timings.growing << "\n";
    out << "post       " << timings.post << "\n";
    out << "metrics    " << timings.metrics << "\n";
    out << "total      " << timings.total << "\n";

    if (!fixtures.empty()) {
        out << "\nliterature comparison on the F3 salt dome (published values, not recomputed; "
               "* = best per column)\n";
        auto best = [&](auto get, bool lower_is_better) {
            std::size_t bi = 0;
            for (std::size_t i = 1; i < fixtures.size(); ++i) {
                if (lower_is_better ? get(fixtures[i]) < get(fixtures[bi])
                                    : get(fixtures[i]) > get(fixtures[bi]))
                    bi = i;
            }
            return bi;
        };
        std::size_t b_acc = best([](const LiteratureRow& r) { return r.acc_mean; }, false);
        std::size_t b_prec = best([](const LiteratureRow& r) { return r.prec_mean; }, false);
        std::size_t b_f = best([](const LiteratureRow& r) { return r.f_mean; }, false);
        std::size_t b_sal = best([](const LiteratureRow& r) { return r.salsim_mean; }, false);
        std::size_t b_cur = best([](const LiteratureRow& r) { return r.curved_mean; }, true);
        std::size_t b_time = best([](const LiteratureRow& r) { return r.time_s; }, true);

        out << std::left << std::setw(28) << "method" << std::setw(16) << "accuracy%" << std::setw(16)
            << "precision%" << std::setw(18) << "f_score" << std::setw(18) << "salsim"
            << std::setw(20) << "curved" << "time_s\n";
        for (std::size_t i = 0; i < fixtures.size(); ++i) {
            const auto& r = fixtures[i];
            auto cell = [&](double mean, double sd, bool star) {
                std::ostringstream c;
                c << std::fixed << std::setprecision(4) << mean << "/" << sd << (star ? "*" : "");
                return c.str();
            };
            out << std::left << std::setw(28) << r.method << std::setw(16)
                << cell(r.acc_mean, r.acc_sd, i == b_acc) << std::setw(16)
                << cell(r.prec_mean, r.prec_sd, i == b_prec) << std::setw(18)
                << cell(r.f_mean, r.f_sd, i == b_f) << std::setw(18)
                << cell(r.salsim_mean, r.salsim_sd, i == b_sal) << std::setw(20)
                << cell(r.curved_mean, r.curved_sd, i == b_cur) << std::fixed
                << std::setprecision(5) << r.time_s << (i == b_time ? "*" : "") << "\n";
        }
    }
    return out.str();
}

void write_metrics_csv(const MetricsReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open metrics csv for write: " + path);
    out << "inline,accuracy,precision,recall,f_score,salsim,curved\n";
    out << std::setprecision(12);
    auto field = [&](const std::optional<double>& v) {
        if (v) out << *v;
    };
    for (const auto& r : report.rows) {
        out << r.inline_id << ",";
        if (r.pixels) out << r.pixels->accuracy;
        out << ",";
        field(r.pixels ? r.pixels->precision : std::nullopt);
        out << ",";
        field(r.pixels ? r.pixels->recall : std::nullopt);
        out << ",";
        field(r.pixels ? r.pixels->f_score : std::nullopt);
        out << ",";
        field(r.salsim);
        out << ",";
        field(r.curved);
        out << "\n";
    }
}

MetricsReport read_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open metrics csv: " + path);
    std::vector<MetricRow> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto parts = split(line, ',');
        if (parts.size() != 7) throw IoError("malformed metrics row: " + line);
        MetricRow r;
        r.inline_id = std::stoi(parts[0]);
        auto opt = [](const std::string& s) -> std::optional<double> {
            if (s.empty()) return std::nullopt;
            return std::stod(s);
        };
        if (!parts[1].empty()) {
            PixelMetrics pm;
            pm.accuracy = std::stod(parts[1]);
            pm.precision = opt(parts[2]);
            pm.recall = opt(parts[3]);
            pm.f_score = opt(parts[4]);
            r.pixels = pm;
        }
        r.salsim = opt(parts[5]);
        r.curved = opt(parts[6]);
        rows.push_back(std::move(r));
    }
    return aggregate(std::move(rows));
}

void write_timings(const StageTimings& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write timings: " + path);
    out << std::setprecision(12);
    out << "saliency=" << t.saliency << "\nthreshold=" << t.threshold << "\ngrowing=" << t.growing
        << "\npost=" << t.post << "\nmetrics=" << t.metrics << "\ntotal=" << t.total << "\n";
}

StageTimings read_timings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open timings: " + path);
    StageTimings t;
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        double v = std::stod(line.substr(eq + 1));
        if (key == "saliency")
            t.saliency = v;
        else if (key == "threshold")
            t.threshold = v;
        else if (key == "growing")
            t.growing = v;
        else if (key == "post")
            t.post = v;
        else if (key == "metrics")
            t.metrics = v;
        else if (key == "total")
            t.total = v;
    }
    return t;
}

}  // namespace saltdel
