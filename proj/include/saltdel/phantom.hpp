#pragma once

#include <cstdint>
#include <vector>

#include "saltdel/polyline.hpp"
#include "saltdel/volume.hpp"

namespace saltdel {

// Synthetic salt-dome volume with analytic ground truth. The dome is the
// upper half of an ellipsoid (flat base toward larger m, i.e. the volume
// bottom when center_m is 1).
struct PhantomSpec {
    Dims dims;
    double center_m = 1.0;   // fractional coordinates in [0,1]
    double center_n = 0.5;
    double center_k = 0.5;
    double semi_m = 0.0;     // semi-axes, voxels
    double semi_n = 0.0;
    double semi_k = 0.0;
    int layers = 8;          // background reflection bands along m
    double noise_amp = 0.0;  // fraction of the unit signal amplitude, [0,1)
    std::uint64_t seed = 0;
};

struct Phantom {
    SeismicVolume volume;
    BinaryVolume mask;                    // exact dome interior
    std::vector<SlicePolyline> boundaries;  // exact per-inline boundary traces
};

Phantom generate_phantom(const PhantomSpec& spec);

}  // namespace saltdel
