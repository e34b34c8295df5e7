#pragma once

#include <vector>

#include "saltdel/polyline.hpp"
#include "saltdel/volume.hpp"

namespace saltdel {

struct StructuringElement {
    int side = 0;                     // odd
    std::vector<std::uint8_t> bits;   // side^3, origin at center

    std::uint8_t at(int a, int b, int c) const {
        return bits[static_cast<std::size_t>(a) +
                    static_cast<std::size_t>(side) * (b + static_cast<std::size_t>(side) * c)];
    }
    static StructuringElement cube(int side);
    void validate() const;
};

// Minkowski dilation; out-of-bounds contributions are dropped.
BinaryVolume dilate(const BinaryVolume& mask, const StructuringElement& se, int threads = 1);

// Boundary voxels: set voxels with a 0 among their in-bounds 26-neighbors,
// plus any set voxel on an outer face of the volume.
BinaryVolume perimeter(const BinaryVolume& mask, int threads = 1);

// Per-slice 2D boundary (8-neighborhood within each inline section; slice
// edges count as outside). Used for analytic ground truth.
BinaryVolume slice_perimeter(const BinaryVolume& mask);

// Orders each inline slice's set voxels into one open/closed polyline by
// nearest-neighbor chaining from the voxel with smallest (n, m). Voxels on
// the bottom face (m = M-1) are skipped; with several 8-connected
// fragments the longest is chained and the fragment count reported.
std::vector<SlicePolyline> extract_polylines(const BinaryVolume& boundary);

}  // namespace saltdel
