#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace homscope {

/// Worker count: HOMSCOPE_THREADS if set to a positive integer, else hardware concurrency.
inline std::size_t thread_count()
{
    if (const char * env = std::getenv("HOMSCOPE_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<std::size_t>(v);
        }
        catch (const std::exception &) {
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [0, n). Results must go to per-index slots; the
/// exception of the lowest failing index is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, Fn && fn)
{
    const std::size_t workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    }
                    catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
    }
    for (auto & e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace homscope
