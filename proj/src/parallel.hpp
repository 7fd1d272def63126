// OpenMP loop helper that carries exceptions out of the parallel region.

#pragma once

#include <exception>
#include <mutex>

namespace ptq::detail {

template <typename Body>
void parallel_for(int n, Body&& body) {
    std::exception_ptr failure;
    std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace ptq::detail
