#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gpseq {

/// Worker count used when a call passes 0. Defaults to the hardware
/// concurrency.
unsigned default_workers();
void set_default_workers(unsigned workers);

/// Runs fn(begin, end) over contiguous chunks of [0, count). The first
/// exception thrown by any chunk is rethrown after all workers join.
template <class Fn>
void parallel_chunks(std::size_t count, Fn&& fn, unsigned workers = 0)
{
    if (workers == 0)
        workers = default_workers();
    const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(workers, count));
    if (w <= 1) {
        if (count > 0)
            fn(std::size_t{0}, count);
        return;
    }
    std::exception_ptr error;
    std::mutex mutex;
    std::vector<std::thread> threads;
    threads.reserve(w);
    const std::size_t step = (count + w - 1) / w;
    for (std::size_t begin = 0; begin < count; begin += step) {
        const std::size_t end = std::min(count, begin + step);
        threads.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto& t : threads)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

/// out[i] = fn(i), in index order regardless of scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn, unsigned workers = 0)
{
    std::vector<T> out(count);
    parallel_chunks(
        count,
        [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i)
                out[i] = fn(i);
        },
        workers);
    return out;
}

} // namespace gpseq
