#pragma once

#include <functional>
#include <vector>

namespace sphier {

// Worker count: explicit argument wins, then the SPHERE_HIER_THREADS
// environment variable, then hardware concurrency; always at least 1.
int resolve_thread_count(int requested = 0);

// Run independent tasks on up to `threads` workers and wait for all of them.
// Exceptions propagate: the first one thrown is rethrown after the join.
void parallel_run(std::vector<std::function<void()>> tasks, int threads = 0);

}  // namespace sphier
