#pragma once

#include <vector>

#include "saltdel/volume.hpp"

namespace saltdel {

using SeedSet = std::vector<VoxelIndex>;

struct RegionLabeling {
    Dims dims;
    Connectivity connectivity = Connectivity::six;
    std::vector<int> labels;            // 0 = unallocated, 1..r = region index
    std::vector<std::size_t> counts;    // counts[i] = voxels labeled i (counts[0] unallocated)
};

// Flood fill over the 0-voxels of b starting from the seeds; highlighted
// (1) voxels act as walls. Seeds must sit on 0-voxels.
BinaryVolume grow_binary(const BinaryVolume& b, const SeedSet& seeds, Connectivity connectivity);

// Intensity-driven growing: repeatedly allocates the frontier voxel whose
// absolute difference to an adjacent region's running mean is smallest,
// until that minimum exceeds `tolerance` or nothing is left. Ties break by
// lowest linear voxel index, then lowest region index.
RegionLabeling grow_intensity(const SeismicVolume& vol, const SeedSet& seeds,
                              Connectivity connectivity, double tolerance);

// Unallocated voxels adjacent to at least one allocated voxel, in linear
// index order.
std::vector<VoxelIndex> frontier(const RegionLabeling& labeling);

}  // namespace saltdel
