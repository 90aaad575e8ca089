#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace shiftbin {

/// Evaluates fn(0..count-1) on up to `workers` threads and returns the results
/// in index order. Output is independent of scheduling; the first exception
/// thrown by any task is rethrown on the caller's thread.
template <typename Fn>
auto parallel_map(std::size_t count, unsigned workers, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>>
{
    using Result = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<std::optional<Result>> slots(count);
    const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));

    if (threads <= 1) {
        std::vector<Result> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(fn(i));
        }
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        slots[i].emplace(fn(i));
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                        next = count;
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    std::vector<Result> out;
    out.reserve(count);
    for (auto& slot : slots) {
        out.push_back(std::move(*slot));
    }
    return out;
}

/// Number of workers to use when the caller passes 0.
inline unsigned default_workers()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace shiftbin
