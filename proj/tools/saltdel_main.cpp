#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "saltdel/morphology.hpp"
#include "saltdel/otsu.hpp"
#include "saltdel/phantom.hpp"
#include "saltdel/pipeline.hpp"
#include "saltdel/region_growing.hpp"
#include "saltdel/volume_io.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitStage = 4;

namespace fs = std::filesystem;
using namespace saltdel;

std::vector<VoxelIndex> parse_seeds(const std::vector<std::string>& raw) {
    std::vector<VoxelIndex> seeds;
    for (const auto& s : raw) {
        VoxelIndex v;
        if (std::sscanf(s.c_str(), "%d,%d,%d", &v.m, &v.n, &v.k) != 3)
            throw ConfigError("seed must be m,n,k: " + s);
        seeds.push_back(v);
    }
    return seeds;
}

SeismicVolume grid_volume(const Dims& dims, const std::vector<double>& grid) {
    SeismicVolume v;
    v.dims = dims;
    for (double x : grid) v.samples.push_back(static_cast<float>(x));
    return v;
}

SaliencyMap load_saliency(const std::string& data, const std::string& header) {
    SeismicVolume v = load_volume(data, header);
    SaliencyMap map;
    map.dims = v.dims;
    map.fused.assign(v.samples.begin(), v.samples.end());
    return map;
}

int run_guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "stage error: " << e.what() << "\n";
        return kExitStage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"saliency-based salt-dome delineation"};
    app.require_subcommand(1);

    // shared flags
    std::string input, header, config_path, out_dir;
    std::vector<std::string> seed_args;
    std::vector<int> slices;
    int window = 3, se_side = 3, connectivity = 6, threads = 1;
    std::string tiling = "tile", threshold = "auto";
    std::string ref_mask, ref_mask_header, ref_polylines;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", input, "raw f32le volume data file");
        cmd->add_option("--header", header, "volume header sidecar");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--threads", threads, "thread budget");
    };

    auto* run = app.add_subcommand("run", "full pipeline");
    add_common(run);
    run->add_option("--config", config_path, "key=value config file; flags override");
    run->add_option("--window", window, "local cube side L");
    run->add_option("--tiling", tiling)->check(CLI::IsMember({"tile", "slide"}));
    run->add_option("--threshold", threshold, "auto or normalized [0,1] value");
    run->add_option("--seed", seed_args, "seed point m,n,k (repeatable)");
    run->add_option("--connectivity", connectivity)->check(CLI::IsMember({6, 26}));
    run->add_option("--se-side", se_side, "structuring element side");
    run->add_option("--slices", slices, "inline ids to render")->delimiter(',');
    run->add_option("--ref-mask", ref_mask, "reference body mask (u8)");
    run->add_option("--ref-mask-header", ref_mask_header);
    run->add_option("--ref-polylines", ref_polylines, "reference boundary csv");

    auto* sal = app.add_subcommand("saliency", "saliency map only");
    add_common(sal);
    sal->add_option("--window", window);
    sal->add_option("--tiling", tiling)->check(CLI::IsMember({"tile", "slide"}));

    auto* thr = app.add_subcommand("threshold", "binarize a persisted saliency map");
    add_common(thr);
    thr->add_option("--threshold", threshold, "auto or normalized [0,1] value");

    auto* grow = app.add_subcommand("grow", "region growing over a persisted binary volume");
    add_common(grow);
    grow->add_option("--seed", seed_args, "seed point m,n,k (repeatable)")->required();
    grow->add_option("--connectivity", connectivity)->check(CLI::IsMember({6, 26}));

    auto* post = app.add_subcommand("post", "dilation + perimeter + polylines");
    add_common(post);
    post->add_option("--se-side", se_side);

    auto* phantom = app.add_subcommand("phantom", "generate synthetic test data");
    std::vector<int> ph_dims{64, 64, 32};
    std::vector<double> ph_center{1.0, 0.5, 0.5}, ph_semi{28, 20, 10};
    int ph_layers = 8;
    double ph_noise = 0.0;
    std::uint64_t ph_seed = 0;
    phantom->add_option("--dims", ph_dims, "m,n,k")->delimiter(',')->expected(3);
    phantom->add_option("--center", ph_center, "fractional m,n,k")->delimiter(',')->expected(3);
    phantom->add_option("--semi", ph_semi, "semi-axes in voxels")->delimiter(',')->expected(3);
    phantom->add_option("--layers", ph_layers);
    phantom->add_option("--noise", ph_noise, "noise amplitude, fraction of signal");
    phantom->add_option("--rng-seed", ph_seed);
    phantom->add_option("--out", out_dir, "output directory")->required();

    auto* eval = app.add_subcommand("eval", "metrics between two polyline sets");
    std::string pred_polylines;
    std::vector<double> extents{64, 64};
    eval->add_option("--pred-polylines", pred_polylines)->required();
    eval->add_option("--ref-polylines", ref_polylines)->required();
    eval->add_option("--extents", extents, "slice extents n,m for SalSIM")->delimiter(',')->expected(2);
    eval->add_option("--out", out_dir);

    auto* report = app.add_subcommand("report", "re-render a report from persisted metrics");
    std::string report_dir;
    report->add_option("--dir", report_dir, "pipeline output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    if (run->parsed()) {
        return run_guarded([&] {
            RunConfig cfg;
            if (!config_path.empty()) cfg = parse_config_file(config_path);
            if (run->count("--input")) cfg.input = input;
            if (run->count("--header")) cfg.header = header;
            if (run->count("--out")) cfg.out_dir = out_dir;
            if (run->count("--window")) cfg.saliency.window = window;
            if (run->count("--tiling"))
                cfg.saliency.tiling = tiling == "slide" ? Tiling::slide : Tiling::tile;
            if (run->count("--threshold")) {
                if (threshold == "auto")
                    cfg.manual_threshold.reset();
                else
                    cfg.manual_threshold = std::stod(threshold);
            }
            if (!seed_args.empty()) cfg.seeds = parse_seeds(seed_args);
            if (run->count("--connectivity"))
                cfg.connectivity = connectivity == 26 ? Connectivity::twenty_six : Connectivity::six;
            if (run->count("--se-side")) cfg.se_side = se_side;
            if (!slices.empty()) cfg.slices = slices;
            if (run->count("--threads")) cfg.threads = threads;
            if (run->count("--ref-mask")) cfg.ref_mask_data = ref_mask;
            if (run->count("--ref-mask-header")) cfg.ref_mask_header = ref_mask_header;
            if (run->count("--ref-polylines")) cfg.ref_polylines = ref_polylines;
            if (cfg.input.empty() || cfg.header.empty())
                throw ConfigError("input and header are required");
            SeismicVolume vol = load_volume(cfg.input, cfg.header);
            PipelineResult res = run_pipeline(vol, cfg);
            std::cout << "threshold " << (res.auto_threshold ? "auto " : "manual ")
                      << res.threshold_value << "\n";
            if (res.leakage) std::cout << "warning: probable boundary gaps (leakage)\n";
            std::cout << "total " << res.timings.total << " s\n";
        });
    }

    if (sal->parsed()) {
        return run_guarded([&] {
            if (input.empty() || header.empty() || out_dir.empty())
                throw ConfigError("saliency requires --input, --header, --out");
            SeismicVolume vol = load_volume(input, header);
            SaliencyParams p;
            p.window = window;
            p.tiling = tiling == "slide" ? Tiling::slide : Tiling::tile;
            p.threads = threads;
            SaliencyMap map = compute_saliency(vol, p);
            fs::create_directories(out_dir);
            save_volume(grid_volume(map.dims, map.fused), (fs::path(out_dir) / "s.f32").string(),
                        (fs::path(out_dir) / "s.hdr").string());
        });
    }

    if (thr->parsed()) {
        return run_guarded([&] {
            if (input.empty() || header.empty() || out_dir.empty())
                throw ConfigError("threshold requires --input (saliency map), --header, --out");
            SaliencyMap map = load_saliency(input, header);
            double t;
            if (threshold == "auto") {
                Histogram h = build_histogram(map, 256);
                t = otsu_threshold(h).t_value;
            } else {
                double mx = 0.0;
                for (double v : map.fused) mx = std::max(mx, v);
                t = std::stod(threshold) * mx;
            }
            BinaryVolume b = apply_threshold(map, t);
            fs::create_directories(out_dir);
            save_mask(b, (fs::path(out_dir) / "b.u8").string(),
                      (fs::path(out_dir) / "b.hdr").string());
            std::cout << "threshold " << t << "\n";
        });
    }

    if (grow->parsed()) {
        return run_guarded([&] {
            if (input.empty() || header.empty() || out_dir.empty())
                throw ConfigError("grow requires --input (binary volume), --header, --out");
            BinaryVolume b = load_mask(input, header);
            auto seeds = parse_seeds(seed_args);
            BinaryVolume sd = grow_binary(
                b, seeds, connectivity == 26 ? Connectivity::twenty_six : Connectivity::six);
            fs::create_directories(out_dir);
            save_mask(sd, (fs::path(out_dir) / "sd.u8").string(),
                      (fs::path(out_dir) / "sd.hdr").string());
        });
    }

    if (post->parsed()) {
        return run_guarded([&] {
            if (input.empty() || header.empty() || out_dir.empty())
                throw ConfigError("post requires --input (grown body), --header, --out");
            BinaryVolume sd = load_mask(input, header);
            BinaryVolume sd_d = dilate(sd, StructuringElement::cube(se_side), threads);
            BinaryVolume sd_b = perimeter(sd_d, threads);
            auto lines = extract_polylines(slice_perimeter(sd_d));
            fs::create_directories(out_dir);
            save_mask(sd_d, (fs::path(out_dir) / "sd_d.u8").string(),
                      (fs::path(out_dir) / "sd_d.hdr").string());
            save_mask(sd_b, (fs::path(out_dir) / "sd_b.u8").string(),
                      (fs::path(out_dir) / "sd_b.hdr").string());
            write_polylines((fs::path(out_dir) / "polylines.csv").string(), lines);
        });
    }

    if (phantom->parsed()) {
        return run_guarded([&] {
            PhantomSpec spec;
            spec.dims = {ph_dims[0], ph_dims[1], ph_dims[2]};
            spec.center_m = ph_center[0];
            spec.center_n = ph_center[1];
            spec.center_k = ph_center[2];
            spec.semi_m = ph_semi[0];
            spec.semi_n = ph_semi[1];
            spec.semi_k = ph_semi[2];
            spec.layers = ph_layers;
            spec.noise_amp = ph_noise;
            spec.seed = ph_seed;
            Phantom ph = generate_phantom(spec);
            fs::create_directories(out_dir);
            save_volume(ph.volume, (fs::path(out_dir) / "volume.f32").string(),
                        (fs::path(out_dir) / "volume.hdr").string());
            save_mask(ph.mask, (fs::path(out_dir) / "truth_mask.u8").string(),
                      (fs::path(out_dir) / "truth_mask.hdr").string());
            write_polylines((fs::path(out_dir) / "truth_polylines.csv").string(), ph.boundaries);
        });
    }

    if (eval->parsed()) {
        return run_guarded([&] {
            auto pred = read_polylines(pred_polylines);
            auto ref = read_polylines(ref_polylines);
            std::vector<MetricRow> rows;
            for (const auto& rp : ref) {
                for (const auto& pp : pred) {
                    if (pp.k != rp.k) continue;
                    MetricRow row;
                    row.inline_id = rp.k;
                    row.salsim = salsim(pp.line, rp.line, extents[0], extents[1]);
                    if (pp.line.points.size() >= 3 && rp.line.points.size() >= 3)
                        row.curved = curved(pp.line, rp.line);
                    rows.push_back(std::move(row));
                    break;
                }
            }
            if (rows.empty()) throw ConfigError("no overlapping inlines between the polyline sets");
            MetricsReport rep = aggregate(std::move(rows));
            std::cout << render_report(rep, {}, {});
            if (!out_dir.empty()) {
                fs::create_directories(out_dir);
                write_metrics_csv(rep, (fs::path(out_dir) / "metrics.csv").string());
            }
        });
    }

    if (report->parsed()) {
        return run_guarded([&] {
            MetricsReport rep = read_metrics_csv((fs::path(report_dir) / "metrics.csv").string());
            StageTimings t = read_timings((fs::path(report_dir) / "timings.txt").string());
            std::cout << render_report(rep, t, literature_fixtures());
        });
    }

    return 0;
}
