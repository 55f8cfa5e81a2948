#pragma once

#include <cstddef>
#include <functional>

namespace lyap {

// Worker count for grid evaluation: LYAPSPEC_THREADS caps parallelism
// (0 or unset means auto-detect).
std::size_t thread_count();

// Apply fn(i) for i in [0, n), possibly from several threads.  Callers own
// the output storage and index it by i, so results are deterministic
// regardless of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace lyap
