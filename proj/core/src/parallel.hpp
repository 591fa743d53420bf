#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace gperiod::detail {

int configured_threads();

// Splits [0, count) into contiguous chunks, one worker thread per chunk.
inline void parallel_for(int64_t count,
                         const std::function<void(int64_t, int64_t)>& body) {
    const int workers = std::max<int>(
        1, static_cast<int>(std::min<int64_t>(configured_threads(), count)));
    if (workers == 1 || count < 1024) {
        body(0, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int64_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int64_t begin = w * chunk;
        const int64_t end = std::min<int64_t>(begin + chunk, count);
        if (begin >= end) break;
        pool.emplace_back(body, begin, end);
    }
    for (auto& t : pool) t.join();
}

}  // namespace gperiod::detail
