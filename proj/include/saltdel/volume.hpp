#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace saltdel {

// Grid extents: m = time/depth samples, n = crosslines, k = inlines.
struct Dims {
    int m = 0;
    int n = 0;
    int k = 0;

    bool valid() const { return m > 0 && n > 0 && k > 0; }
    std::size_t size() const {
        return static_cast<std::size_t>(m) * static_cast<std::size_t>(n) *
               static_cast<std::size_t>(k);
    }
    bool operator==(const Dims&) const = default;
};

struct VoxelIndex {
    int m = 0;
    int n = 0;
    int k = 0;
    bool operator==(const VoxelIndex&) const = default;
};

// Storage order: m fastest, then n, then k. A fixed-k inline section is a
// contiguous m*n slab.
inline std::size_t linear_index(const Dims& d, int m, int n, int k) {
    return static_cast<std::size_t>(m) +
           static_cast<std::size_t>(d.m) *
               (static_cast<std::size_t>(n) + static_cast<std::size_t>(d.n) * k);
}

inline std::size_t linear_index(const Dims& d, const VoxelIndex& v) {
    return linear_index(d, v.m, v.n, v.k);
}

inline bool in_bounds(const Dims& d, const VoxelIndex& v) {
    return v.m >= 0 && v.m < d.m && v.n >= 0 && v.n < d.n && v.k >= 0 && v.k < d.k;
}

struct VolumeMeta {
    std::optional<double> start_ms;
    std::optional<double> step_ms;
    bool operator==(const VolumeMeta&) const = default;
};

struct SeismicVolume {
    Dims dims;
    std::vector<float> samples;
    VolumeMeta meta;

    float at(int m, int n, int k) const { return samples[linear_index(dims, m, n, k)]; }
    float& at(int m, int n, int k) { return samples[linear_index(dims, m, n, k)]; }
};

struct BinaryVolume {
    Dims dims;
    std::vector<std::uint8_t> bits;

    std::uint8_t at(int m, int n, int k) const { return bits[linear_index(dims, m, n, k)]; }
    std::uint8_t& at(int m, int n, int k) { return bits[linear_index(dims, m, n, k)]; }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto b : bits) c += b;
        return c;
    }
};

inline BinaryVolume make_binary(const Dims& d) { return BinaryVolume{d, std::vector<std::uint8_t>(d.size(), 0)}; }

enum class Connectivity : int { six = 6, twenty_six = 26 };

// In-bounds neighbors of v, excluding v itself. Deterministic order
// (offsets enumerated k-major, then n, then m).
std::vector<VoxelIndex> neighbors(const VoxelIndex& v, const Dims& d, Connectivity c);

}  // namespace saltdel
