#pragma once

#include <future>
#include <thread>
#include <vector>

namespace pardensur {

inline unsigned default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs f(i) for i in [0, count) across contiguous chunks. Results must be
// written by index; chunking keeps outputs independent of worker count.
template <typename F>
void parallel_for(std::size_t count, unsigned workers, F&& f) {
    if (count == 0) return;
    if (workers == 0) workers = default_workers();
    if (workers <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(workers, count);
    std::vector<std::future<void>> futures;
    futures.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = count * c / chunks;
        const std::size_t end = count * (c + 1) / chunks;
        futures.push_back(std::async(std::launch::async, [&f, begin, end] {
            for (std::size_t i = begin; i < end; ++i) f(i);
        }));
    }
    for (auto& fut : futures) fut.get();
}

}  // namespace pardensur
