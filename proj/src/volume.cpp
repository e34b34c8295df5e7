#include "saltdel/volume.hpp"

namespace saltdel {

std::vector<VoxelIndex> neighbors(const VoxelIndex& v, const Dims& d, Connectivity c) {
    if (!in_bounds(d, v)) throw std::out_of_range("neighbors: voxel out of bounds");
    std::vector<VoxelIndex> out;
    out.reserve(c == Connectivity::six ? 6 : 26);
    for (int dk = -1; dk <= 1; ++dk) {
        for (int dn = -1; dn <= 1; ++dn) {
            for (int dm = -1; dm <= 1; ++dm) {
                if (dm == 0 && dn == 0 && dk == 0) continue;
                if (c == Connectivity::six && std::abs(dm) + std::abs(dn) + std::abs(dk) != 1)
                    continue;
                VoxelIndex nb{v.m + dm, v.n + dn, v.k + dk};
                if (in_bounds(d, nb)) out.push_back(nb);
            }
        }
    }
    return out;
}

}  // namespace saltdel
