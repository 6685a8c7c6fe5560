#pragma once

// Parameter grids and the two ways of mapping a pure function over them.
// map_serial is the reference; map_parallel must return identical results
// in identical order for any worker count.

#include <cstddef>
#include <exception>
#include <string>
#include <vector>

namespace ypfa {

enum class Spacing { log, linear };

struct SweepGrid {
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 1;
    Spacing spacing = Spacing::log;
};
void validate(const SweepGrid& g);

/// Grid values; the first is exactly min and the last exactly max.
std::vector<double> grid_values(const SweepGrid& g);

std::string describe(const SweepGrid& g);

/// Worker count from YPFA_WORKERS, else 1.
int default_workers();

template <class T, class Fn>
auto map_serial(const std::vector<T>& items, Fn&& fn) {
    using R = decltype(fn(items.front()));
    std::vector<R> out;
    out.reserve(items.size());
    for (const auto& item : items) out.push_back(fn(item));
    return out;
}

template <class T, class Fn>
auto map_parallel(const std::vector<T>& items, Fn&& fn, int workers) {
    using R = decltype(fn(items.front()));
    if (workers <= 1 || items.size() < 2) return map_serial(items, fn);
    std::vector<R> out(items.size());
    std::exception_ptr first_error;
    const auto n = static_cast<long>(items.size());
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(items[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(ypfa_sweep_error)
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace ypfa
