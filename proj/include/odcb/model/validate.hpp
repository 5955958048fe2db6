// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <string>
#include <vector>

#include "odcb/model/data_model.hpp"

namespace odcb {

namespace rules {
inline constexpr const char* kUniqueConceptName = "unique-concept-name";
inline constexpr const char* kExactlyOneCore = "exactly-one-core";
inline constexpr const char* kCompositionTree = "composition-tree";
inline constexpr const char* kUniquePropertyName = "unique-property-name";
inline constexpr const char* kCompositeIffComponentRef = "composite-iff-component-ref";
inline constexpr const char* kFilterableImpliesExposed = "filterable-implies-exposed";
inline constexpr const char* kReadableNameRequired = "readable-name-required";
inline constexpr const char* kSynonymsDistinct = "synonyms-distinct";
inline constexpr const char* kIdentifier = "identifier";
inline constexpr const char* kValidDomain = "valid-domain";
inline constexpr const char* kResourcePathRequired = "resource-path-required";
inline constexpr const char* kFieldNameRequired = "field-name-required";
// warning only
inline constexpr const char* kUnknownSourceType = "unknown-source-type";
}  // namespace rules

struct Violation {
  std::string path;  // "AirQualityData.date", "AirQualityData", "binding", "model"
  std::string rule;
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<Violation> warnings;

  bool empty() const noexcept { return violations.empty(); }
  bool has_rule(std::string_view rule) const;
  std::string describe() const;
  bool operator==(const ValidationReport&) const = default;
};

/// Checks every structural and annotation invariant of the model.
/// Violations are reported, never thrown.
ValidationReport validate(const DataModel& model);

}  // namespace odcb
