#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace saltdel {

// Splits [0, count) into contiguous chunks, one per worker. Each index is
// handled by exactly one worker, so disjoint writes stay deterministic.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t, std::size_t)>& body) {
    if (threads <= 1 || count < 2) {
        body(0, count);
        return;
    }
    auto nworkers = static_cast<std::size_t>(threads);
    if (nworkers > count) nworkers = count;
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    std::size_t chunk = (count + nworkers - 1) / nworkers;
    for (std::size_t w = 0; w < nworkers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace saltdel
