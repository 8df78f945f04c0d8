#ifndef CURVEFLOW_PARALLEL_HPP
#define CURVEFLOW_PARALLEL_HPP

#include <cstddef>
#include <cstdint>

namespace curveflow {

enum class Exec { Serial, Parallel };

// Below this many items the OpenMP region costs more than the loop body.
inline constexpr std::size_t kParallelThreshold = 2048;

// Nodewise map; fn(i) must only write slot i of its outputs.
template <class Fn>
void for_each_index(Exec exec, std::size_t count, Fn&& fn, std::size_t threshold = kParallelThreshold) {
    if (exec == Exec::Parallel && count >= threshold) {
        const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) fn(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < count; ++i) fn(i);
    }
}

int max_threads();

}  // namespace curveflow

#endif
