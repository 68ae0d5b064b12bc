// Copyright 2026 The MOVCO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MOVCO_PARALLEL_HPP
#define MOVCO_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace movco {

/// Name of the environment variable that sets the worker count.
inline constexpr const char* kThreadsEnvVar = "MOVCO_THREADS";

/// Worker count from MOVCO_THREADS, falling back to 1.
std::size_t threads_from_env();

/// Runs body(i) for i in [0, n) on up to `threads` workers. Work items are
/// claimed dynamically, so body must write only to slots owned by i. If any
/// call throws, the exception from the lowest failing index is rethrown after
/// all workers stop.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace movco

#endif  // MOVCO_PARALLEL_HPP
