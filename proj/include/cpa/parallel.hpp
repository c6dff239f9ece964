#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace cpa {

inline unsigned default_thread_count()
{
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Runs body(replica_index) for every index in [0, replicas) across threads.
// Work is claimed dynamically but each replica derives its own rng stream,
// so results are identical for any thread count; callers store into
// per-index slots and aggregate afterwards.
template <typename Body>
void parallel_replicas(std::uint64_t replicas, unsigned threads, Body&& body)
{
    if (threads <= 1 || replicas <= 1) {
        for (std::uint64_t r = 0; r < replicas; ++r)
            body(r);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    const unsigned n_workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, replicas));
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::uint64_t r = next.fetch_add(1, std::memory_order_relaxed);
                if (r >= replicas)
                    return;
                body(r);
            }
        });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace cpa
