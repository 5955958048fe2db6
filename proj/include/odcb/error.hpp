// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace odcb {

enum class ErrorCode {
  // model
  UnknownProperty,
  NameCollision,
  MalformedDocument,
  SchemaVersionMismatch,
  // importers
  MalformedDescriptor,
  EmptyDataset,
  // refine
  UnknownPath,
  InvariantViolation,
  CompositeProperty,
  // botgen
  NoExposedConcept,
  NoExposedProperties,
  // nlu
  NoMatch,
  UnparsableValue,
  UnknownVocabulary,
  AmbiguousVocabulary,
  // runtime
  UnsupportedDialect,
  Transport,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Typed failure raised by every odcb operation. The code is the contract;
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  // The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace odcb
