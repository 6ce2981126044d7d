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

#include <iosfwd>
#include <string>

#include "ttc/tensor.hpp"

namespace ttc {

// DT1: ASCII line "DT1 <N> <I_1> ... <I_N>\n" followed by the entries as
// little-endian float64 in first-index-fastest order.
// DM1: same header with tag "DM1", then one byte (0 or 1) per entry.

void write_dt1(std::ostream& os, const DenseTensor& t);
DenseTensor read_dt1(std::istream& is);
void save_dt1(const std::string& path, const DenseTensor& t);
DenseTensor load_dt1(const std::string& path);

void write_dm1(std::ostream& os, const ObservationMask& m);
ObservationMask read_dm1(std::istream& is);
void save_dm1(const std::string& path, const ObservationMask& m);
ObservationMask load_dm1(const std::string& path);

}  // namespace ttc
