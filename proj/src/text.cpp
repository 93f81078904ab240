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

#include "obridge/text.hpp"

#include "obridge/error.hpp"

#include <algorithm>

namespace obridge {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::UnknownParent: return "UnknownParent";
    case Errc::CycleRejected: return "CycleRejected";
    case Errc::UnknownClass: return "UnknownClass";
    case Errc::UnknownRelationType: return "UnknownRelationType";
    case Errc::UnknownNamespace: return "UnknownNamespace";
    case Errc::UnknownDataSource: return "UnknownDataSource";
    case Errc::UnknownEndpoint: return "UnknownEndpoint";
    case Errc::UnknownConcept: return "UnknownConcept";
    case Errc::InvalidName: return "InvalidName";
    case Errc::InvalidBasis: return "InvalidBasis";
    case Errc::OpaqueRejected: return "OpaqueRejected";
    case Errc::MalformedLiteral: return "MalformedLiteral";
    case Errc::EvidenceRejected: return "EvidenceRejected";
    case Errc::FrozenGraph: return "FrozenGraph";
    case Errc::DuplicatePrefix: return "DuplicatePrefix";
    case Errc::DuplicateBaseIri: return "DuplicateBaseIri";
    case Errc::RelativeBaseIri: return "RelativeBaseIri";
    case Errc::InvalidBaseIri: return "InvalidBaseIri";
    case Errc::NoMatchingNamespace: return "NoMatchingNamespace";
    case Errc::RegistryMismatch: return "RegistryMismatch";
    case Errc::OpaqueLiteralPresent: return "OpaqueLiteralPresent";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::InconsistentBasis: return "InconsistentBasis";
    case Errc::InvalidVocabulary: return "InvalidVocabulary";
    case Errc::ParseFailure: return "ParseFailure";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::MissingTemplate: return "MissingTemplate";
  }
  return "Unknown";
}

namespace text {

std::optional<char32_t> decode_utf8(std::string_view s, std::size_t& pos) {
  if (pos >= s.size()) return std::nullopt;
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    return std::nullopt;
  }
  if (pos + len > s.size()) return std::nullopt;
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return std::nullopt;
  pos += len;
  return cp;
}

bool is_valid_utf8(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (!decode_utf8(s, pos)) return false;
  }
  return true;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

namespace {

bool forbidden_in_iri(unsigned char c) {
  if (c <= 0x20 || c == 0x7F) return true;
  switch (c) {
    case '<': case '>': case '"': case '{': case '}':
    case '|': case '^': case '`': case '\\':
      return true;
    default:
      return false;
  }
}

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

bool is_name_token(std::string_view s) {
  if (s.empty() || !is_valid_utf8(s)) return false;
  return std::none_of(s.begin(), s.end(),
                      [](char c) { return forbidden_in_iri(static_cast<unsigned char>(c)); });
}

std::string to_name_token(std::string_view s) {
  std::string out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t start = pos;
    auto cp = decode_utf8(s, pos);
    if (!cp) {
      out.push_back('_');
      ++pos;
      continue;
    }
    if (*cp < 0x80 && forbidden_in_iri(static_cast<unsigned char>(*cp))) {
      out.push_back('_');
    } else {
      out.append(s.substr(start, pos - start));
    }
  }
  if (out.empty()) out = "_";
  return out;
}

bool is_absolute_iri(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0 || !is_alpha(s[0])) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    const char c = s[i];
    if (!is_alpha(c) && !is_digit(c) && c != '+' && c != '-' && c != '.') return false;
  }
  if (!is_valid_utf8(s)) return false;
  return std::none_of(s.begin(), s.end(),
                      [](char c) { return forbidden_in_iri(static_cast<unsigned char>(c)); });
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && ascii_lower(a) == ascii_lower(b);
}

bool istarts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

}  // namespace text
}  // namespace obridge
