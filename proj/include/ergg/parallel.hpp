// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ergg {

/// Runs fn(chunk) for chunk = 0..chunks-1 on up to `workers` threads and
/// returns the results in chunk order, so reductions over them do not depend
/// on scheduling.
template <class Fn>
auto run_chunks(std::size_t chunks, std::size_t workers, Fn&& fn)
{
    using Result = decltype(fn(std::size_t{0}));
    std::vector<Result> results(chunks);
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(chunks, 1));
    if (workers == 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            results[c] = fn(c);
        }
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < chunks; c = next++) {
                try {
                    results[c] = fn(c);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return results;
}

/// Splits `total` items into `chunks` near-equal contiguous counts.
inline std::vector<std::size_t> chunk_sizes(std::size_t total, std::size_t chunks)
{
    std::vector<std::size_t> sizes(chunks, total / chunks);
    for (std::size_t c = 0; c < total % chunks; ++c) {
        ++sizes[c];
    }
    return sizes;
}

}  // namespace ergg
