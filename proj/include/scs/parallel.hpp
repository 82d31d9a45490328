#ifndef SCS_PARALLEL_HPP
#define SCS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace scs {

/// Resolve a worker count: explicit request, else the SCS_THREADS
/// environment variable, else hardware concurrency.
unsigned resolve_thread_count(unsigned requested = 0);

/// Run body(i) for i in [0, count) on a transient worker pool.
/// Work items must write only to disjoint slots; given that, results are
/// independent of the worker count and of scheduling order.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

} // namespace scs

#endif
