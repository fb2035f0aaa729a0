// Copyright 2026 The bornphase Authors
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
#include <string_view>

#include "bornphase/quantum/system.hpp"

namespace bornphase {

// Plain-text records, one per line, numbers written with 17 significant
// digits so that parsing reproduces the stored doubles exactly:
//
//   E <index> <energy>
//   V <row> <col> <re> <im>
//   C <index> <re> <im>
//
// Blank lines and lines starting with '#' are ignored. Parsers throw
// ParseError naming the offending line.

std::string serialize_system(const SpectralSystem& system);
std::string serialize_state(const StateVector& state);

/// Reads E and V records (C records are ignored). The offset recorded on the
/// resulting system is 0; stored energies already include any shift.
SpectralSystem parse_system(std::string_view text);

/// Reads C records (E and V records are ignored).
StateVector parse_state(std::string_view text, std::string label = {});

}  // namespace bornphase
