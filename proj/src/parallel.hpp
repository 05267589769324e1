#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace contour::detail {

inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(begin, end) on contiguous chunks of [0, count). Chunks are
/// disjoint, so fn may write to per-index slots without locking.
template <class Fn>
void parallel_ranges(std::uint64_t count, unsigned workers, Fn&& fn) {
    workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), std::max<std::uint64_t>(count, 1)));
    if (workers <= 1) {
        fn(std::uint64_t{0}, count);
        return;
    }
    const std::uint64_t chunk = (count + workers - 1) / workers;
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = std::min(count, w * chunk);
            const std::uint64_t end = std::min(count, begin + chunk);
            if (begin < end)
                pool.emplace_back([&fn, &errors, w, begin, end] {
                    try {
                        fn(begin, end);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace contour::detail
