#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace mft {

/// Runs fn(i) for i in [0, n), splitting contiguous index ranges across
/// threads.  Callers write results into index-addressed slots, so the output
/// is identical to the serial loop regardless of scheduling.  Small ranges
/// run serially.
template <typename Fn>
inline void parallel_for(std::size_t n, const Fn& fn, std::size_t grain = 256) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (n <= grain || hw == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(hw, (n + grain - 1) / grain);
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace mft
