#pragma once

#include <cstddef>
#include <functional>

namespace pairgen {

/// Worker cap for data-parallel sweeps. Starts from PAIRGEN_THREADS when set
/// (and positive), otherwise the hardware concurrency.
unsigned thread_count();
/// 0 restores the default.
void set_thread_count(unsigned n);

/// Calls body(i) for i in [0, n) on up to thread_count() workers. Indices are
/// handed out dynamically, so body must not depend on execution order. The
/// first exception thrown by body is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace pairgen
