#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace cyclefield {

inline unsigned default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Splits [0, total) into at most `workers` contiguous ranges and runs
/// fn(worker_index, begin, end) on one thread per nonempty range. Callers own
/// per-worker accumulators and merge them in worker order afterwards, which
/// keeps aggregate results independent of scheduling.
inline void parallel_ranges(std::uint64_t total, unsigned workers,
                            const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn) {
    if (workers == 0) workers = default_workers();
    if (total == 0) return;
    std::uint64_t chunk = (total + workers - 1) / workers;
    std::vector<std::thread> threads;
    unsigned used = 0;
    for (std::uint64_t begin = 0; begin < total; begin += chunk, ++used) {
        std::uint64_t end = std::min(total, begin + chunk);
        threads.emplace_back(fn, used, begin, end);
    }
    for (auto& t : threads) t.join();
}

}  // namespace cyclefield
