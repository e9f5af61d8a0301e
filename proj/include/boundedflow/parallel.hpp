#pragma once

#include <functional>

#include "boundedflow/types.hpp"

namespace boundedflow {

/// Number of worker threads to use; honours the BOUNDEDFLOW_THREADS cap.
int thread_count();

/// Runs body(i) for i in [begin, end) across threads. Each index must write
/// only to its own output slot; reductions belong to the caller so results
/// stay independent of the thread count.
void parallel_for(Index begin, Index end, const std::function<void(Index)>& body);

}  // namespace boundedflow
