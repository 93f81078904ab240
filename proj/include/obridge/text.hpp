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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace obridge::text {

bool is_valid_utf8(std::string_view s);

/// Decodes one UTF-8 sequence at `pos`, advancing it. Returns nullopt on an
/// invalid or truncated sequence (pos is left unchanged).
std::optional<char32_t> decode_utf8(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

/// Name tokens are non-empty UTF-8 strings that can be embedded verbatim in an
/// N-Triples IRIREF: no whitespace, controls, or any of <>"{}|^`\.
bool is_name_token(std::string_view s);

/// Replaces every character not allowed in a name token with '_'.
std::string to_name_token(std::string_view s);

/// scheme ":" rest, with no characters forbidden inside an IRIREF.
bool is_absolute_iri(std::string_view s);

std::string ascii_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool istarts_with(std::string_view s, std::string_view prefix);

}  // namespace obridge::text
