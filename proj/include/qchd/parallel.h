#ifndef QCHD_PARALLEL_H
#define QCHD_PARALLEL_H

#include <cstddef>
#include <functional>

namespace qchd {

/// Worker count: hardware concurrency, capped by the QCHD_THREADS environment
/// variable when it is set to a positive integer.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Each index is processed exactly once; callers
/// write results into index-addressed slots, so output never depends on the
/// schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

}  // namespace qchd

#endif
