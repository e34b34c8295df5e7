#pragma once

#include <array>
#include <string>
#include <vector>

namespace saltdel {

// Ordered boundary trace on one inline section. Points are (crossline n,
// time m) in voxel units.
struct BoundaryPolyline {
    std::vector<std::array<double, 2>> points;
    bool closed = false;
};

struct SlicePolyline {
    int k = 0;  // inline index
    BoundaryPolyline line;
    int fragment_count = 1;  // connected components seen on the slice
};

// Delimited text, one row per point: inline_k,crossline_n,time_m
void write_polylines(const std::string& path, const std::vector<SlicePolyline>& lines);
std::vector<SlicePolyline> read_polylines(const std::string& path);

}  // namespace saltdel
