#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace expsys {

/** Evaluates fn(0), ..., fn(n-1) on up to `jobs` threads and returns the results in index
    order. If any call throws, the exception of the smallest failing index is rethrown. */
template <class F>
auto parallel_map(std::size_t n, int jobs, F&& fn) -> std::vector<std::invoke_result_t<F&, std::size_t>>
{
    using T = std::invoke_result_t<F&, std::size_t>;
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

}  // namespace expsys
