#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace hypcheck {

/// Splits [0, n) into `workers` contiguous chunks and runs fn(chunk, begin, end)
/// on each. Chunk boundaries depend only on (n, workers); callers merge
/// per-chunk results in chunk order so output is independent of scheduling.
template <class Fn>
void parallel_chunks(std::uint64_t n, unsigned workers, Fn&& fn)
{
    workers = std::max(1u, workers);
    if (n < workers)
        workers = static_cast<unsigned>(std::max<std::uint64_t>(n, 1));
    if (workers == 1) {
        fn(0u, std::uint64_t{0}, n);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned c = 0; c < workers; ++c) {
            std::uint64_t begin = n * c / workers;
            std::uint64_t end = n * (c + 1) / workers;
            pool.emplace_back([&, c, begin, end] {
                try {
                    fn(c, begin, end);
                } catch (...) {
                    errors[c] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

inline unsigned default_workers()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace hypcheck
