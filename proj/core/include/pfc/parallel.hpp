#pragma once

#include <functional>

namespace pfc {

// Number of worker threads: PFCURV_THREADS if set and positive, otherwise the
// hardware concurrency (at least 1).
int thread_count();

// Runs fn(i) for i in [begin, end), splitting the range across thread_count()
// threads. Falls back to a serial loop for small ranges or a single thread.
// Exceptions thrown by fn are rethrown on the calling thread.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

}  // namespace pfc
