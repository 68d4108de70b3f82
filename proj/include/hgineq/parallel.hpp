#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hgineq {

/// Resolves a job count: explicit positive value, else HGINEQ_JOBS, else hardware concurrency.
int resolve_jobs(int requested);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Indices are handed out
/// dynamically; callers write results into per-index slots so the outcome does not
/// depend on scheduling. The first exception thrown by any task is rethrown.
inline void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace hgineq
