#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace galstat {

/// Worker count from GALSTAT_JOBS, else hardware concurrency, at least 1.
unsigned default_jobs();

/// Splits [0, n) into `jobs` contiguous chunks and runs body(begin, end, chunk)
/// on each, one thread per chunk. The first exception thrown by any chunk is
/// rethrown after all threads join.
template <class Body>
void parallel_chunks(std::uint64_t n, unsigned jobs, Body&& body) {
    jobs = static_cast<unsigned>(std::clamp<std::uint64_t>(jobs, 1, std::max<std::uint64_t>(n, 1)));
    if (jobs == 1) {
        body(std::uint64_t{0}, n, 0u);
        return;
    }
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        const std::uint64_t begin = n * w / jobs, end = n * (w + 1) / jobs;
        threads.emplace_back([&, begin, end, w] {
            try {
                body(begin, end, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace galstat
