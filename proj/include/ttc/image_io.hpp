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

#include <string>

#include "ttc/tensor.hpp"

namespace ttc {

// Binary netpbm images with maxval 255. P5 loads as (rows, cols), P6 as
// (rows, cols, 3); samples are scaled to [0, 1].

DenseTensor load_image(const std::string& path);
/// Order-2 tensors are written as P5, (rows, cols, 3) tensors as P6. Values
/// are clamped to [0, 1] and rounded to the nearest 8-bit level.
void save_image(const DenseTensor& t, const std::string& path);

}  // namespace ttc
