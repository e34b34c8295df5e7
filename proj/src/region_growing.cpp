#include "saltdel/region_growing.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

namespace saltdel {
namespace {

void check_seeds(const Dims& d, const SeedSet& seeds) {
    if (seeds.empty()) throw std::invalid_argument("region growing: empty seed set");
    for (const auto& s : seeds)
        if (!in_bounds(d, s)) throw std::out_of_range("region growing: seed out of bounds");
}

VoxelIndex from_linear(const Dims& d, std::size_t idx) {
    int m = static_cast<int>(idx % d.m);
    int n = static_cast<int>((idx / d.m) % d.n);
    int k = static_cast<int>(idx / (static_cast<std::size_t>(d.m) * d.n));
    return {m, n, k};
}

}  // namespace

BinaryVolume grow_binary(const BinaryVolume& b, const SeedSet& seeds, Connectivity connectivity) {
    check_seeds(b.dims, seeds);
    for (const auto& s : seeds)
        if (b.bits[linear_index(b.dims, s)] != 0)
            throw std::invalid_argument("grow_binary: seed lies on a highlighted boundary voxel");

    BinaryVolume sd = make_binary(b.dims);
    std::queue<VoxelIndex> queue;
    for (const auto& s : seeds) {
        std::size_t idx = linear_index(b.dims, s);
        if (!sd.bits[idx]) {
            sd.bits[idx] = 1;
            queue.push(s);
        }
    }
    while (!queue.empty()) {
        VoxelIndex v = queue.front();
        queue.pop();
        for (const auto& nb : neighbors(v, b.dims, connectivity)) {
            std::size_t idx = linear_index(b.dims, nb);
            if (sd.bits[idx] || b.bits[idx]) continue;
            sd.bits[idx] = 1;
            queue.push(nb);
        }
    }
    return sd;
}

RegionLabeling grow_intensity(const SeismicVolume& vol, const SeedSet& seeds,
                              Connectivity connectivity, double tolerance) {
    check_seeds(vol.dims, seeds);
    if (tolerance < 0) throw std::invalid_argument("grow_intensity: negative tolerance");

    const Dims d = vol.dims;
    RegionLabeling lab;
    lab.dims = d;
    lab.connectivity = connectivity;
    lab.labels.assign(d.size(), 0);
    lab.counts.assign(seeds.size() + 1, 0);
    lab.counts[0] = d.size();

    std::vector<double> region_sum(seeds.size() + 1, 0.0);
    std::vector<std::size_t> region_count(seeds.size() + 1, 0);
    std::set<std::size_t> unalloc_frontier;

    auto allocate = [&](std::size_t idx, int region) {
        lab.labels[idx] = region;
        --lab.counts[0];
        ++lab.counts[static_cast<std::size_t>(region)];
        region_sum[static_cast<std::size_t>(region)] += vol.samples[idx];
        ++region_count[static_cast<std::size_t>(region)];
        unalloc_frontier.erase(idx);
        for (const auto& nb : neighbors(from_linear(d, idx), d, connectivity)) {
            std::size_t q = linear_index(d, nb);
            if (lab.labels[q] == 0) unalloc_frontier.insert(q);
        }
    };

    for (std::size_t i = 0; i < seeds.size(); ++i) {
        std::size_t idx = linear_index(d, seeds[i]);
        if (lab.labels[idx] != 0)
            throw std::invalid_argument("grow_intensity: duplicate seed voxel");
        allocate(idx, static_cast<int>(i) + 1);
    }

    while (!unalloc_frontier.empty()) {
        // frontier voxel with minimum delta against its best adjacent region
        double best_delta = std::numeric_limits<double>::infinity();
        std::size_t best_idx = 0;
        int best_region = 0;
        for (std::size_t idx : unalloc_frontier) {
            double v = vol.samples[idx];
            double local_best = std::numeric_limits<double>::infinity();
            int local_region = 0;
            for (const auto& nb : neighbors(from_linear(d, idx), d, connectivity)) {
                int r = lab.labels[linear_index(d, nb)];
                if (r == 0) continue;
                double mean = region_sum[static_cast<std::size_t>(r)] /
                              static_cast<double>(region_count[static_cast<std::size_t>(r)]);
                double delta = std::abs(v - mean);
                if (delta < local_best || (delta == local_best && r < local_region)) {
                    local_best = delta;
                    local_region = r;
                }
            }
            if (local_best < best_delta) {
                best_delta = local_best;
                best_idx = idx;
                best_region = local_region;
            }
        }
        if (best_region == 0 || best_delta > tolerance) break;
        allocate(best_idx, best_region);
    }
    return lab;
}

std::vector<VoxelIndex> frontier(const RegionLabeling& labeling) {
    const Dims d = labeling.dims;
    std::vector<VoxelIndex> out;
    for (std::size_t idx = 0; idx < labeling.labels.size(); ++idx) {
        if (labeling.labels[idx] != 0) continue;
        VoxelIndex v = from_linear(d, idx);
        for (const auto& nb : neighbors(v, d, labeling.connectivity)) {
            if (labeling.labels[linear_index(d, nb)] != 0) {
                out.push_back(v);
                break;
            }
        }
    }
    return out;
}

}  // namespace saltdel
