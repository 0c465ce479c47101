/* Copyright 2026 The cbnorm Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef CBNORM_PARALLEL_HPP_
#define CBNORM_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace cbnorm {

// Worker count: `requested` if positive, else CBNORM_THREADS if set to an
// integer >= 1, else 1.
int resolve_threads(int requested = 0);

// Runs body(i) for i in [0, count) on up to `threads` workers.  Each index
// runs exactly once; callers write results into per-index slots and reduce
// afterwards, so the outcome does not depend on scheduling.  The first
// exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace cbnorm

#endif  // CBNORM_PARALLEL_HPP_
