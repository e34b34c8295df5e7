#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "saltdel/volume.hpp"

namespace saltdel {

// Local spectrum of an L^3 data cube. Coefficients are stored with the
// same axis order as the volume (first index fastest).
struct SpectralCube {
    int side = 0;
    std::vector<std::complex<double>> coeff;

    std::complex<double> at(int a, int b, int c) const {
        return coeff[static_cast<std::size_t>(a) + static_cast<std::size_t>(side) * (b + static_cast<std::size_t>(side) * c)];
    }
    std::complex<double>& at(int a, int b, int c) {
        return coeff[static_cast<std::size_t>(a) + static_cast<std::size_t>(side) * (b + static_cast<std::size_t>(side) * c)];
    }
};

struct EnergyField {
    Dims dims;
    std::vector<double> e_time;
    std::vector<double> e_space;
};

struct SaliencyMap {
    Dims dims;
    std::vector<double> s_time;
    std::vector<double> s_space;
    std::vector<double> fused;
    bool normalized = false;
};

enum class Tiling { tile, slide };

struct SaliencyParams {
    int window = 3;                  // local cube side L
    Tiling tiling = Tiling::tile;    // non-overlapping tiles by default
    int surround_radius = 1;         // 3x3x3 surround
    double w_time = 0.5;
    double w_space = 0.5;
    int time_axis = 0;               // 0 = m (time/depth), 1 = n, 2 = k
    int threads = 1;
};

// Forward DFT of an L^3 block with 1/L^3 normalization. Input is row-major
// with the first axis fastest; must contain exactly side^3 finite values.
SpectralCube dft3(const std::vector<double>& block, int side);

// Frequency-index alias: j if j <= L/2, else j - L.
inline int signed_freq(int j, int side) { return j <= side / 2 ? j : j - side; }

// Directional weights for one frequency bin. The cube axis given by
// time_axis carries the time-related component; the other two are spatial.
// Both weights are zero at DC. Squares sum to 1 at every other bin.
std::pair<double, double> decomposition_weights(int a, int b, int c, int side, int time_axis);

// Splits a spectrum into time- and space-change-related parts. By default
// the third cube index is the time-frequency axis.
std::pair<SpectralCube, SpectralCube> decompose(const SpectralCube& cube, int time_axis = 2);

// Mean absolute weighted spectrum per window, expanded to voxel resolution.
// Tile mode replicates each tile value across its voxels; edge voxels not
// covered by a full tile inherit the nearest tile. Slide mode centers a
// clamped window at every voxel.
EnergyField spectral_energy(const SeismicVolume& volume, const SaliencyParams& params);

// Center-surround contrast of both energy grids. Divisor is the count of
// in-bounds neighbors at each voxel.
std::pair<std::vector<double>, std::vector<double>> center_surround(const EnergyField& field,
                                                                    const SaliencyParams& params);

SaliencyMap fuse(const Dims& dims, std::vector<double> s_time, std::vector<double> s_space,
                 double w_time, double w_space);

// Scales the fused map so its max is 1 (no-op on an all-zero map).
void normalize_max(SaliencyMap& map);

SaliencyMap compute_saliency(const SeismicVolume& volume, const SaliencyParams& params);

}  // namespace saltdel
