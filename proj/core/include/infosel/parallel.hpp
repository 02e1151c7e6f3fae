#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace infosel {

// Runs fn(index, worker) for every index in [begin, end) on up to `jobs`
// threads.  Results must not depend on execution order; worker ids are dense
// in [0, jobs) so each worker can own a scratch slot.  The first exception
// thrown by any item is rethrown after all workers stop.
inline void parallel_for(std::size_t begin, std::size_t end, int jobs,
                         const std::function<void(std::size_t, int)>& fn) {
    if (begin >= end) return;
    const std::size_t count = end - begin;
    if (jobs <= 1 || count == 1) {
        for (std::size_t i = begin; i < end; ++i) fn(i, 0);
        return;
    }

    const int workers =
        static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), count));
    std::atomic<std::size_t> next{begin};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next.fetch_add(1); i < end; i = next.fetch_add(1)) {
                    fn(i, w);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace infosel
