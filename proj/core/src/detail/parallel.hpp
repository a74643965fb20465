#pragma once

// Deterministic block-parallel driver.  Work is cut into fixed blocks whose
// layout depends only on the item count, never on the worker count; callers
// combine per-block results in block order, so outputs are byte-identical for
// any number of workers.

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace stablesde::detail {

inline int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

inline std::uint64_t block_size_for(std::uint64_t n_items) {
    constexpr std::uint64_t kMinBlock = 64;
    constexpr std::uint64_t kMaxBlocks = 256;
    const std::uint64_t by_count = (n_items + kMaxBlocks - 1) / kMaxBlocks;
    return by_count > kMinBlock ? by_count : kMinBlock;
}

inline std::uint64_t block_count_for(std::uint64_t n_items) {
    const std::uint64_t bs = block_size_for(n_items);
    return n_items == 0 ? 0 : (n_items + bs - 1) / bs;
}

// fn(block_index, begin, end).  The first throwing block (lowest index) wins,
// so failures are reported deterministically.
inline void run_blocks(std::uint64_t n_items, int workers,
                       const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn) {
    if (n_items == 0) return;
    const std::uint64_t bs = block_size_for(n_items);
    const std::uint64_t nblocks = block_count_for(n_items);
    const int nthreads = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(resolve_workers(workers)), nblocks));

    std::vector<std::exception_ptr> errors(nblocks);
    if (nthreads <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b) {
            try {
                fn(b, b * bs, std::min(n_items, (b + 1) * bs));
            } catch (...) {
                errors[b] = std::current_exception();
                break;
            }
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::uint64_t b = next.fetch_add(1);
                if (b >= nblocks) return;
                try {
                    fn(b, b * bs, std::min(n_items, (b + 1) * bs));
                } catch (...) {
                    errors[b] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// fn(i) for i in [0, n); one item per dispatch, for a handful of coarse
// independent jobs (grid entries).  Same deterministic failure order.
inline void run_items(std::uint64_t n_items, int workers,
                      const std::function<void(std::uint64_t)>& fn) {
    if (n_items == 0) return;
    const int nthreads = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(resolve_workers(workers)), n_items));

    std::vector<std::exception_ptr> errors(n_items);
    if (nthreads <= 1) {
        for (std::uint64_t i = 0; i < n_items; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
                break;
            }
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= n_items) return;
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace stablesde::detail
