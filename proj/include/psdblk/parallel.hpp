// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace psdblk {

/// Runs fn(i) for i in [0, total) on up to `jobs` threads. Callers write
/// results into preallocated slot i only, and reduce sequentially afterwards,
/// so outputs cannot depend on the schedule. Exceptions are rethrown on the
/// calling thread.
void parallel_for(long total, int jobs, const std::function<void(long)>& fn);

}  // namespace psdblk
