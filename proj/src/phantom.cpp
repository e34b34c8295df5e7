#include "saltdel/phantom.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "saltdel/morphology.hpp"

namespace saltdel {

Phantom generate_phantom(const PhantomSpec& spec) {
    const Dims d = spec.dims;
    if (!d.valid()) throw std::invalid_argument("phantom: invalid dims");
    if (spec.semi_m <= 0 || spec.semi_n <= 0 || spec.semi_k <= 0)
        throw std::invalid_argument("phantom: semi-axes must be positive");
    if (spec.noise_amp < 0 || spec.noise_amp >= 1)
        throw std::invalid_argument("phantom: noise amplitude must be in [0,1)");
    if (spec.layers < 1) throw std::invalid_argument("phantom: need at least one layer");

    const double cm = spec.center_m * (d.m - 1);
    const double cn = spec.center_n * (d.n - 1);
    const double ck = spec.center_k * (d.k - 1);
    if (cm - spec.semi_m < 0 || cn - spec.semi_n < 0 || cn + spec.semi_n > d.n - 1 ||
        ck - spec.semi_k < 0 || ck + spec.semi_k > d.k - 1)
        throw std::invalid_argument("phantom: dome exceeds volume bounds");

    Phantom ph;
    ph.volume.dims = d;
    ph.volume.samples.resize(d.size());
    ph.mask = make_binary(d);

    auto inside = [&](int m, int n, int k) {
        double rm = (m - cm) / spec.semi_m;
        double rn = (n - cn) / spec.semi_n;
        double rk = (k - ck) / spec.semi_k;
        return m <= cm && rm * rm + rn * rn + rk * rk <= 1.0;
    };
    // first-order distance (voxels) from the ellipsoid surface, negative inside
    auto surface_dist = [&](int m, int n, int k) {
        double rm = (m - cm) / spec.semi_m;
        double rn = (n - cn) / spec.semi_n;
        double rk = (k - ck) / spec.semi_k;
        double rho = std::sqrt(rm * rm + rn * rn + rk * rk);
        double g = std::sqrt(rm * rm / (spec.semi_m * spec.semi_m) +
                             rn * rn / (spec.semi_n * spec.semi_n) +
                             rk * rk / (spec.semi_k * spec.semi_k));
        return g > 0 ? (rho - 1.0) * rho / g : -spec.semi_m;
    };

    // The dome texture is painted in 3^3 macro-blocks that stay within about
    // one voxel of the half-ellipsoid. Texture transitions therefore fall on
    // whole block faces, giving the body a crisp spectral footprint instead
    // of a gradual partial-coverage ramp along the curved surface, while the
    // blocky hull stays centered on the true boundary.
    const int B = 3;
    const double block_slack = 1.0;
    const int gm = (d.m + B - 1) / B, gn = (d.n + B - 1) / B, gk = (d.k + B - 1) / B;
    auto bidx = [&](int bm, int bn, int bk) {
        return (static_cast<std::size_t>(bk) * gn + bn) * gm + bm;
    };
    std::vector<char> body(static_cast<std::size_t>(gm) * gn * gk, 0);
    for (int bk = 0; bk < gk; ++bk)
        for (int bn = 0; bn < gn; ++bn)
            for (int bm = 0; bm < gm; ++bm) {
                bool all = true;
                for (int k = bk * B; all && k < std::min((bk + 1) * B, d.k); ++k)
                    for (int n = bn * B; all && n < std::min((bn + 1) * B, d.n); ++n)
                        for (int m = bm * B; m < std::min((bm + 1) * B, d.m); ++m)
                            if (m > cm || surface_dist(m, n, k) > block_slack) {
                                all = false;
                                break;
                            }
                body[bidx(bm, bn, bk)] = all ? 1 : 0;
            }
    // band blocks: body blocks exposed to a non-body block face
    std::vector<char> band(body.size(), 0);
    for (int bk = 0; bk < gk; ++bk)
        for (int bn = 0; bn < gn; ++bn)
            for (int bm = 0; bm < gm; ++bm) {
                if (!body[bidx(bm, bn, bk)]) continue;
                auto exposed = [&](int am, int an, int ak) {
                    if (am < 0 || am >= gm || an < 0 || an >= gn || ak < 0 || ak >= gk)
                        return false;  // the volume wall already seals this face
                    return body[bidx(am, an, ak)] == 0;
                };
                if (exposed(bm - 1, bn, bk) || exposed(bm + 1, bn, bk) ||
                    exposed(bm, bn - 1, bk) || exposed(bm, bn + 1, bk) ||
                    exposed(bm, bn, bk - 1) || exposed(bm, bn, bk + 1))
                    band[bidx(bm, bn, bk)] = 1;
            }

    const double two_pi = 2.0 * std::numbers::pi;
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    for (int k = 0; k < d.k; ++k)
        for (int n = 0; n < d.n; ++n)
            for (int m = 0; m < d.m; ++m) {
                // draw per voxel in fixed order so geometry never shifts the stream
                double chaotic = uni(rng);
                double noise = uni(rng);

                // fine alternating layering; oscillation keeps the spectral
                // energy away from the (discarded) zero-frequency bin
                double checker = (m + n + k) % 2 == 0 ? 1.0 : -1.0;

                std::size_t bi = bidx(m / B, n / B, k / B);
                double value;
                if (band[bi]) {
                    // high-contrast reflection package lining the dome surface
                    value = 4.6 * checker;
                } else if (body[bi]) {
                    // salt body: fine texture plus amplitude-suppressed chaos
                    value = 4.0 * checker + 0.15 * chaotic;
                } else {
                    value = std::sin(two_pi * m * spec.layers / d.m) +
                            0.05 * std::sin(two_pi * 3.0 * n / d.n) *
                                std::cos(two_pi * 2.0 * k / d.k);
                }
                value += spec.noise_amp * noise;

                std::size_t idx = linear_index(d, m, n, k);
                ph.volume.samples[idx] = static_cast<float>(value);
                ph.mask.bits[idx] = inside(m, n, k) ? 1 : 0;
            }

    ph.boundaries = extract_polylines(slice_perimeter(ph.mask));
    return ph;
}

}  // namespace saltdel
