#include "saltdel/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "saltdel/parallel.hpp"

namespace saltdel {

StructuringElement StructuringElement::cube(int side) {
    StructuringElement se;
    se.side = side;
    se.bits.assign(static_cast<std::size_t>(side) * side * side, 1);
    se.validate();
    return se;
}

void StructuringElement::validate() const {
    if (side < 1 || side % 2 == 0)
        throw std::invalid_argument("structuring element side must be odd and >= 1");
    if (bits.size() != static_cast<std::size_t>(side) * side * side)
        throw std::invalid_argument("structuring element bit count mismatch");
    int c = side / 2;
    if (!at(c, c, c)) throw std::invalid_argument("structuring element origin must be active");
}

BinaryVolume dilate(const BinaryVolume& mask, const StructuringElement& se, int threads) {
    se.validate();
    const Dims d = mask.dims;
    const int h = se.side / 2;
    BinaryVolume out = make_binary(d);
    parallel_for(static_cast<std::size_t>(d.k), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k)
            for (int n = 0; n < d.n; ++n)
                for (int m = 0; m < d.m; ++m) {
                    std::uint8_t hit = 0;
                    for (int c = 0; c < se.side && !hit; ++c)
                        for (int b = 0; b < se.side && !hit; ++b)
                            for (int a = 0; a < se.side && !hit; ++a) {
                                if (!se.at(a, b, c)) continue;
                                int mm = m - (a - h), nn = n - (b - h),
                                    kk = static_cast<int>(k) - (c - h);
                                if (mm < 0 || mm >= d.m || nn < 0 || nn >= d.n || kk < 0 ||
                                    kk >= d.k)
                                    continue;
                                hit = mask.at(mm, nn, kk);
                            }
                    out.at(m, n, static_cast<int>(k)) = hit;
                }
    });
    return out;
}

BinaryVolume perimeter(const BinaryVolume& mask, int threads) {
    const Dims d = mask.dims;
    BinaryVolume out = make_binary(d);
    parallel_for(static_cast<std::size_t>(d.k), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t ks = lo; ks < hi; ++ks) {
            int k = static_cast<int>(ks);
            for (int n = 0; n < d.n; ++n)
                for (int m = 0; m < d.m; ++m) {
                    if (!mask.at(m, n, k)) continue;
                    bool on_face = m == 0 || m == d.m - 1 || n == 0 || n == d.n - 1 || k == 0 ||
                                   k == d.k - 1;
                    bool boundary = on_face;
                    for (int dk = -1; dk <= 1 && !boundary; ++dk)
                        for (int dn = -1; dn <= 1 && !boundary; ++dn)
                            for (int dm = -1; dm <= 1 && !boundary; ++dm) {
                                if (dm == 0 && dn == 0 && dk == 0) continue;
                                int mm = m + dm, nn = n + dn, kk = k + dk;
                                if (mm < 0 || mm >= d.m || nn < 0 || nn >= d.n || kk < 0 ||
                                    kk >= d.k)
                                    continue;
                                if (!mask.at(mm, nn, kk)) boundary = true;
                            }
                    if (boundary) out.at(m, n, k) = 1;
                }
        }
    });
    return out;
}

BinaryVolume slice_perimeter(const BinaryVolume& mask) {
    const Dims d = mask.dims;
    BinaryVolume out = make_binary(d);
    for (int k = 0; k < d.k; ++k)
        for (int n = 0; n < d.n; ++n)
            for (int m = 0; m < d.m; ++m) {
                if (!mask.at(m, n, k)) continue;
                bool boundary = m == 0 || m == d.m - 1 || n == 0 || n == d.n - 1;
                for (int dn = -1; dn <= 1 && !boundary; ++dn)
                    for (int dm = -1; dm <= 1 && !boundary; ++dm) {
                        if (dm == 0 && dn == 0) continue;
                        int mm = m + dm, nn = n + dn;
                        if (mm < 0 || mm >= d.m || nn < 0 || nn >= d.n) continue;
                        if (!mask.at(mm, nn, k)) boundary = true;
                    }
                if (boundary) out.at(m, n, k) = 1;
            }
    return out;
}

namespace {

struct Pixel {
    int n, m;
};

int component_of(const std::vector<Pixel>& px, std::vector<int>& comp) {
    // 8-connected components via label propagation over the pixel list
    comp.assign(px.size(), -1);
    int ncomp = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < px.size(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = ncomp;
        stack.push_back(s);
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < px.size(); ++j) {
                if (comp[j] >= 0) continue;
                if (std::abs(px[i].n - px[j].n) <= 1 && std::abs(px[i].m - px[j].m) <= 1) {
                    comp[j] = ncomp;
                    stack.push_back(j);
                }
            }
        }
        ++ncomp;
    }
    return ncomp;
}

}  // namespace

std::vector<SlicePolyline> extract_polylines(const BinaryVolume& boundary) {
    const Dims d = boundary.dims;
    std::vector<SlicePolyline> out;
    for (int k = 0; k < d.k; ++k) {
        std::vector<Pixel> px;
        for (int n = 0; n < d.n; ++n)
            for (int m = 0; m < d.m; ++m) {
                if (m == d.m - 1) continue;  // bottom face clipped by survey extent
                if (boundary.at(m, n, k)) px.push_back({n, m});
            }
        if (px.empty()) continue;

        std::vector<int> comp;
        int ncomp = component_of(px, comp);

        // keep the largest component; tie -> the one holding the smallest (n, m)
        std::vector<std::size_t> size(static_cast<std::size_t>(ncomp), 0);
        for (int c : comp) ++size[static_cast<std::size_t>(c)];
        int keep = 0;
        for (int c = 1; c < ncomp; ++c)
            if (size[static_cast<std::size_t>(c)] > size[static_cast<std::size_t>(keep)]) keep = c;

        std::vector<Pixel> chainable;
        for (std::size_t i = 0; i < px.size(); ++i)
            if (comp[i] == keep) chainable.push_back(px[i]);

        // deterministic start: smallest (n, m)
        std::sort(chainable.begin(), chainable.end(), [](const Pixel& a, const Pixel& b) {
            return a.n != b.n ? a.n < b.n : a.m < b.m;
        });

        std::vector<char> used(chainable.size(), 0);
        std::vector<Pixel> chain;
        chain.reserve(chainable.size());
        std::size_t cur = 0;
        used[0] = 1;
        chain.push_back(chainable[0]);
        for (std::size_t step = 1; step < chainable.size(); ++step) {
            double best = 0.0;
            std::size_t next = chainable.size();
            for (std::size_t j = 0; j < chainable.size(); ++j) {
                if (used[j]) continue;
                double dn = chainable[j].n - chainable[cur].n;
                double dm = chainable[j].m - chainable[cur].m;
                double dist = dn * dn + dm * dm;
                if (next == chainable.size() || dist < best) {
                    best = dist;
                    next = j;
                }
            }
            used[next] = 1;
            chain.push_back(chainable[next]);
            cur = next;
        }

        SlicePolyline sp;
        sp.k = k;
        sp.fragment_count = ncomp;
        for (const auto& p : chain)
            sp.line.points.push_back({static_cast<double>(p.n), static_cast<double>(p.m)});
        if (chain.size() >= 3) {
            int dn = chain.front().n - chain.back().n;
            int dm = chain.front().m - chain.back().m;
            sp.line.closed = std::abs(dn) <= 1 && std::abs(dm) <= 1;
        }
        out.push_back(std::move(sp));
    }
    return out;
}

}  // namespace saltdel
