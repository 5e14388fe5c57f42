#pragma once

#include <cstddef>
#include <functional>

namespace nfagen {

// Worker count: NFAGEN_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int default_threads();

// Runs body(i) for i in [0, count) on up to `threads` workers. Callers write
// results into slot i, so the outcome does not depend on scheduling. The
// first exception thrown by a body is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  int threads = default_threads());

}  // namespace nfagen
