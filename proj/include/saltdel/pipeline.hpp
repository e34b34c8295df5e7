#pragma once

#include <optional>
#include <string>
#include <vector>

#include "saltdel/metrics.hpp"
#include "saltdel/morphology.hpp"
#include "saltdel/otsu.hpp"
#include "saltdel/polyline.hpp"
#include "saltdel/region_growing.hpp"
#include "saltdel/saliency.hpp"
#include "saltdel/volume.hpp"

namespace saltdel {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string input;   // data path
    std::string header;  // header path
    SaliencyParams saliency;
    std::optional<double> manual_threshold;  // normalized [0,1]; empty = auto (Otsu)
    std::vector<VoxelIndex> seeds;
    Connectivity connectivity = Connectivity::six;
    int se_side = 3;
    std::string out_dir;
    std::vector<int> slices;  // inline ids for image export
    int threads = 1;
    std::string ref_mask_data, ref_mask_header;  // optional reference body
    std::string ref_polylines;                   // optional reference boundaries
};

// key=value file with the RunConfig field names; unknown keys rejected.
RunConfig parse_config_file(const std::string& path);
void write_config(const RunConfig& cfg, const std::string& path);

struct StageTimings {
    double saliency = 0.0;
    double threshold = 0.0;
    double growing = 0.0;
    double post = 0.0;
    double metrics = 0.0;
    double total = 0.0;
};

struct PipelineResult {
    BinaryVolume boundary;  // final boundary voxels
    std::vector<SlicePolyline> polylines;
    std::optional<MetricsReport> report;  // present when references were given
    StageTimings timings;
    ThresholdResult threshold;
    double threshold_value = 0.0;  // saliency units actually applied
    bool auto_threshold = true;
    bool leakage = false;  // grown body touches >= 25% of the outer faces
};

// saliency -> threshold -> growing -> dilation -> perimeter -> polylines
// -> metrics. Persists every intermediate under cfg.out_dir.
PipelineResult run_pipeline(const SeismicVolume& volume, const RunConfig& cfg);

// 8-bit slice render (PPM), min-max scaled, with optional overlays burned
// in. Each overlay gets its own RGB color.
struct Overlay {
    const std::vector<SlicePolyline>* lines = nullptr;
    std::uint8_t r = 0, g = 255, b = 0;
};
void export_slice_image(const Dims& dims, const std::vector<double>& grid, int k,
                        const std::vector<Overlay>& overlays, const std::string& path);

// Published comparison results, shipped as static values for the report.
struct LiteratureRow {
    std::string method;
    double acc_mean, acc_sd;      // percent
    double prec_mean, prec_sd;    // percent
    double f_mean, f_sd;
    double salsim_mean, salsim_sd;
    double curved_mean, curved_sd;
    double time_s;
};
const std::vector<LiteratureRow>& literature_fixtures();

std::string render_report(const MetricsReport& report, const StageTimings& timings,
                          const std::vector<LiteratureRow>& fixtures);

void write_metrics_csv(const MetricsReport& report, const std::string& path);
MetricsReport read_metrics_csv(const std::string& path);
void write_timings(const StageTimings& t, const std::string& path);
StageTimings read_timings(const std::string& path);

}  // namespace saltdel
