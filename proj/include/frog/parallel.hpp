#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace frog {

/// jobs <= 0 means "all available threads".
inline int resolve_jobs(int jobs) {
#ifdef _OPENMP
    return jobs > 0 ? jobs : omp_get_max_threads();
#else
    (void)jobs;
    return 1;
#endif
}

template <class F>
void serial_for(std::size_t n, F&& body) {
    for (std::size_t k = 0; k < n; ++k) body(k);
}

/// Runs body(k) for k < n on up to `jobs` threads. If any iteration throws,
/// the exception from the smallest index is rethrown, so failures do not
/// depend on the schedule.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& body) {
    const int threads = resolve_jobs(jobs);
    if (threads <= 1 || n <= 1) {
        serial_for(n, body);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long k = 0; k < count; ++k) {
        try {
            body(static_cast<std::size_t>(k));
        } catch (...) {
            errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// results[k] = f(k), evaluated in parallel and returned in index order.
template <class R, class F>
std::vector<R> map_indices(std::size_t n, int jobs, F&& f) {
    std::vector<R> out(n);
    parallel_for(n, jobs, [&](std::size_t k) { out[k] = f(k); });
    return out;
}

} // namespace frog
