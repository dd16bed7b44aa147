#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pvg {

/// 0 means "use hardware parallelism".
[[nodiscard]] inline unsigned resolve_threads(unsigned hint) {
    if (hint > 0) return hint;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(i) for every i in [0, count), distributing indices dynamically
/// over `threads` workers. body must only write state owned by index i; the
/// result is then independent of scheduling. The first exception thrown by
/// any worker is rethrown after all workers have joined.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    threads = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(threads - 1);
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace pvg
