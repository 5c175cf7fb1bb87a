#pragma once

#include <cstddef>

namespace siegel {

// Engines run their per-lattice loops either serially (reference path, kept
// for testing) or via OpenMP. Results are written into preallocated slots so
// the merged output is identical in canonical order either way.
enum class ExecPolicy { Serial, Parallel };

template <typename F>
void parallel_for(std::size_t count, ExecPolicy policy, F&& body) {
#ifdef _OPENMP
    if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < (long)count; ++i) body((std::size_t)i);
        return;
    }
#endif
    (void)policy;
    for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace siegel
