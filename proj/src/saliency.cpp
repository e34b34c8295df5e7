#include "saltdel/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "saltdel/parallel.hpp"

namespace saltdel {
namespace {

// 1D DFT along the given stride, in place over a scratch line.
void dft_lines(std::vector<std::complex<double>>& data, int side, int axis) {
    const int L = side;
    std::vector<std::complex<double>> line(L), out(L);
    std::vector<std::complex<double>> twiddle(static_cast<std::size_t>(L) * L);
    for (int f = 0; f < L; ++f)
        for (int j = 0; j < L; ++j)
            twiddle[static_cast<std::size_t>(f) * L + j] =
                std::polar(1.0, -2.0 * std::numbers::pi * f * j / L);

    int strides[3] = {1, L, L * L};
    int stride = strides[axis];
    // iterate over all lines perpendicular to `axis`
    int oa = (axis + 1) % 3, ob = (axis + 2) % 3;
    for (int b = 0; b < L; ++b) {
        for (int a = 0; a < L; ++a) {
            std::size_t base = static_cast<std::size_t>(a) * strides[oa] +
                               static_cast<std::size_t>(b) * strides[ob];
            for (int j = 0; j < L; ++j) line[j] = data[base + static_cast<std::size_t>(j) * stride];
            for (int f = 0; f < L; ++f) {
                std::complex<double> acc = 0.0;
                for (int j = 0; j < L; ++j) acc += line[j] * twiddle[static_cast<std::size_t>(f) * L + j];
                out[f] = acc;
            }
            for (int f = 0; f < L; ++f) data[base + static_cast<std::size_t>(f) * stride] = out[f];
        }
    }
}

}  // namespace

SpectralCube dft3(const std::vector<double>& block, int side) {
    if (side < 2) throw std::invalid_argument("dft3: side must be >= 2");
    std::size_t expected = static_cast<std::size_t>(side) * side * side;
    if (block.size() != expected) throw std::invalid_argument("dft3: input is not a full cube");
    SpectralCube cube;
    cube.side = side;
    cube.coeff.assign(block.begin(), block.end());
    for (int axis = 0; axis < 3; ++axis) dft_lines(cube.coeff, side, axis);
    double norm = 1.0 / static_cast<double>(expected);
    for (auto& c : cube.coeff) c *= norm;
    return cube;
}

std::pair<double, double> decomposition_weights(int a, int b, int c, int side, int time_axis) {
    int f[3] = {signed_freq(a, side), signed_freq(b, side), signed_freq(c, side)};
    double r2 = static_cast<double>(f[0]) * f[0] + static_cast<double>(f[1]) * f[1] +
                static_cast<double>(f[2]) * f[2];
    if (r2 == 0.0) return {0.0, 0.0};
    double t2 = static_cast<double>(f[time_axis]) * f[time_axis];
    double r = std::sqrt(r2);
    return {std::sqrt(t2) / r, std::sqrt(r2 - t2) / r};
}

std::pair<SpectralCube, SpectralCube> decompose(const SpectralCube& cube, int time_axis) {
    const int L = cube.side;
    SpectralCube ft{L, std::vector<std::complex<double>>(cube.coeff.size())};
    SpectralCube fs{L, std::vector<std::complex<double>>(cube.coeff.size())};
    for (int c = 0; c < L; ++c)
        for (int b = 0; b < L; ++b)
            for (int a = 0; a < L; ++a) {
                auto [wt, ws] = decomposition_weights(a, b, c, L, time_axis);
                ft.at(a, b, c) = cube.at(a, b, c) * wt;
                fs.at(a, b, c) = cube.at(a, b, c) * ws;
            }
    return {std::move(ft), std::move(fs)};
}

namespace {

// Mean |F_t| and |F_s| of one window.
std::pair<double, double> window_energy(const SeismicVolume& vol, int m0, int n0, int k0,
                                        const SaliencyParams& p) {
    const int L = p.window;
    std::vector<double> block(static_cast<std::size_t>(L) * L * L);
    std::size_t idx = 0;
    for (int k = 0; k < L; ++k)
        for (int n = 0; n < L; ++n)
            for (int m = 0; m < L; ++m)
                block[idx++] = vol.at(m0 + m, n0 + n, k0 + k);
    SpectralCube cube = dft3(block, L);
    double et = 0.0, es = 0.0;
    for (int c = 0; c < L; ++c)
        for (int b = 0; b < L; ++b)
            for (int a = 0; a < L; ++a) {
                auto [wt, ws] = decomposition_weights(a, b, c, L, p.time_axis);
                double mag = std::abs(cube.at(a, b, c));
                et += wt * mag;
                es += ws * mag;
            }
    double inv = 1.0 / (static_cast<double>(L) * L * L);
    return {et * inv, es * inv};
}

}  // namespace

EnergyField spectral_energy(const SeismicVolume& volume, const SaliencyParams& params) {
    const int L = params.window;
    const Dims d = volume.dims;
    if (L < 2) throw std::invalid_argument("spectral_energy: window must be >= 2");
    if (d.m < L || d.n < L || d.k < L)
        throw std::invalid_argument("spectral_energy: volume smaller than window");
    if (params.time_axis < 0 || params.time_axis > 2)
        throw std::invalid_argument("spectral_energy: time_axis must be 0, 1 or 2");

    EnergyField field{d, std::vector<double>(d.size()), std::vector<double>(d.size())};

    if (params.tiling == Tiling::tile) {
        int tm = d.m / L, tn = d.n / L, tk = d.k / L;
        std::vector<double> tile_et(static_cast<std::size_t>(tm) * tn * tk);
        std::vector<double> tile_es(tile_et.size());
        parallel_for(static_cast<std::size_t>(tk), params.threads,
                     [&](std::size_t lo, std::size_t hi) {
                         for (std::size_t zk = lo; zk < hi; ++zk)
                             for (int zn = 0; zn < tn; ++zn)
                                 for (int zm = 0; zm < tm; ++zm) {
                                     auto [et, es] = window_energy(volume, zm * L, zn * L,
                                                                   static_cast<int>(zk) * L, params);
                                     std::size_t t = zm + static_cast<std::size_t>(tm) *
                                                              (zn + static_cast<std::size_t>(tn) * zk);
                                     tile_et[t] = et;
                                     tile_es[t] = es;
                                 }
                     });
        // replicate tile values; edge voxels past the last full tile take the nearest tile
        for (int k = 0; k < d.k; ++k) {
            int zk = std::min(k / L, tk - 1);
            for (int n = 0; n < d.n; ++n) {
                int zn = std::min(n / L, tn - 1);
                for (int m = 0; m < d.m; ++m) {
                    int zm = std::min(m / L, tm - 1);
                    std::size_t t = zm + static_cast<std::size_t>(tm) *
                                             (zn + static_cast<std::size_t>(tn) * zk);
                    std::size_t v = linear_index(d, m, n, k);
                    field.e_time[v] = tile_et[t];
                    field.e_space[v] = tile_es[t];
                }
            }
        }
    } else {
        int half = (L - 1) / 2;
        parallel_for(static_cast<std::size_t>(d.k), params.threads,
                     [&](std::size_t lo, std::size_t hi) {
                         for (std::size_t k = lo; k < hi; ++k) {
                             int k0 = std::clamp(static_cast<int>(k) - half, 0, d.k - L);
                             for (int n = 0; n < d.n; ++n) {
                                 int n0 = std::clamp(n - half, 0, d.n - L);
                                 for (int m = 0; m < d.m; ++m) {
                                     int m0 = std::clamp(m - half, 0, d.m - L);
                                     auto [et, es] = window_energy(volume, m0, n0, k0, params);
                                     std::size_t v = linear_index(d, m, n, static_cast<int>(k));
                                     field.e_time[v] = et;
                                     field.e_space[v] = es;
                                 }
                             }
                         }
                     });
    }
    return field;
}

std::pair<std::vector<double>, std::vector<double>> center_surround(const EnergyField& field,
                                                                    const SaliencyParams& params) {
    const Dims d = field.dims;
    const int r = params.surround_radius;
    if (r < 1) throw std::invalid_argument("center_surround: surround radius must be >= 1");
    std::vector<double> st(d.size()), ss(d.size());
    parallel_for(static_cast<std::size_t>(d.k), params.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k)
            for (int n = 0; n < d.n; ++n)
                for (int m = 0; m < d.m; ++m) {
                    std::size_t c = linear_index(d, m, n, static_cast<int>(k));
                    double sum_t = 0.0, sum_s = 0.0;
                    int count = 0;
                    for (int dk = -r; dk <= r; ++dk)
                        for (int dn = -r; dn <= r; ++dn)
                            for (int dm = -r; dm <= r; ++dm) {
                                if (dm == 0 && dn == 0 && dk == 0) continue;
                                int mm = m + dm, nn = n + dn, kk = static_cast<int>(k) + dk;
                                if (mm < 0 || mm >= d.m || nn < 0 || nn >= d.n || kk < 0 ||
                                    kk >= d.k)
                                    continue;
                                std::size_t q = linear_index(d, mm, nn, kk);
                                sum_t += std::abs(field.e_time[c] - field.e_time[q]);
                                sum_s += std::abs(field.e_space[c] - field.e_space[q]);
                                ++count;
                            }
                    st[c] = sum_t / count;
                    ss[c] = sum_s / count;
                }
    });
    return {std::move(st), std::move(ss)};
}

SaliencyMap fuse(const Dims& dims, std::vector<double> s_time, std::vector<double> s_space,
                 double w_time, double w_space) {
    if (s_time.size() != dims.size() || s_space.size() != dims.size())
        throw std::invalid_argument("fuse: grid dims mismatch");
    SaliencyMap map;
    map.dims = dims;
    map.fused.resize(dims.size());
    for (std::size_t i = 0; i < map.fused.size(); ++i)
        map.fused[i] = w_time * s_time[i] + w_space * s_space[i];
    map.s_time = std::move(s_time);
    map.s_space = std::move(s_space);
    return map;
}

void normalize_max(SaliencyMap& map) {
    double mx = 0.0;
    for (double v : map.fused) mx = std::max(mx, v);
    if (mx > 0.0)
        for (double& v : map.fused) v /= mx;
    map.normalized = true;
}

SaliencyMap compute_saliency(const SeismicVolume& volume, const SaliencyParams& params) {
    if (params.w_time < 0 || params.w_space < 0 ||
        std::abs(params.w_time + params.w_space - 1.0) > 1e-9)
        throw std::invalid_argument("compute_saliency: fusion weights must be >= 0 and sum to 1");
    EnergyField field = spectral_energy(volume, params);
    auto [st, ss] = center_surround(field, params);
    return fuse(volume.dims, std::move(st), std::move(ss), params.w_time, params.w_space);
}

}  // namespace saltdel
