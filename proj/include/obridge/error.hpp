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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace obridge {

enum class Errc {
  // graph-core
  DuplicateId,
  UnknownParent,
  CycleRejected,
  UnknownClass,
  UnknownRelationType,
  UnknownNamespace,
  UnknownDataSource,
  UnknownEndpoint,
  UnknownConcept,
  InvalidName,
  InvalidBasis,
  OpaqueRejected,
  MalformedLiteral,
  EvidenceRejected,
  FrozenGraph,
  // identity
  DuplicatePrefix,
  DuplicateBaseIri,
  RelativeBaseIri,
  InvalidBaseIri,
  NoMatchingNamespace,
  RegistryMismatch,
  // rdf-codec
  OpaqueLiteralPresent,
  SyntaxError,
  InconsistentBasis,
  InvalidVocabulary,
  // documents, lint, audit
  ParseFailure,
  InvalidConfig,
  MissingTemplate,
};

std::string_view errc_name(Errc code);

/// Base exception for every failure raised by the library. The code is
/// stable and matches the error names used in docs and CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// N-Triples parse failure. Line and column are 1-based; column counts bytes.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& reason)
      : Error(Errc::SyntaxError, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + reason),
        line_(line),
        column_(column),
        reason_(reason) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string reason_;
};

}  // namespace obridge
