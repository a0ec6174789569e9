#pragma once

#include <functional>

namespace adirac {

/// Worker count: min(hardware_concurrency, DIRAC_AFUNC_THREADS) when the
/// environment variable is set, at least 1.
int worker_count();

/// Run fn(i) for i in [0, count). Work items must be independent and write
/// only to their own slots so results do not depend on the thread count.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace adirac
