// Copyright 2026 The ondex-bridge Authors
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

#include "obridge/graph.hpp"
#include "obridge/identity.hpp"

#include <string>

namespace obridge::testing {

/// Backtracking isomorphism check between two graphs. Handles are ignored;
/// everything else (types, data sources, provenance, concepts, relations,
/// attributes and their dependencies) must correspond. On failure `why`
/// receives a short reason.
bool isomorphic(const Graph& a, const Graph& b, std::string* why = nullptr);

/// Brute-force alignment: every concept pair, accession sets intersected by
/// nested loops.
IdentityMap brute_force_align(const Graph& left, const Graph& right);

}  // namespace obridge::testing
