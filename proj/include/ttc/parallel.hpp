// Copyright 2026 The ttcomplete Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace ttc {

/// Worker cap: TTC_WORKERS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Overrides worker_count() for the calling process; 0 restores the default.
void set_worker_count(std::size_t workers);

/// Runs task(i) for i in [0, count). Tasks must write disjoint outputs; the
/// partition into tasks is the caller's, so results never depend on how many
/// workers pick them up.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace ttc
