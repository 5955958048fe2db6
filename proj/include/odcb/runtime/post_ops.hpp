// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "odcb/botgen/vocabulary.hpp"
#include "odcb/nlu/value.hpp"

namespace odcb {

// One API record: a JSON object keyed by field name.
using Row = nlohmann::ordered_json;

struct PostFilter {
  std::string fieldName;
  SemanticType type = SemanticType::Text;
  Operator op = Operator::Equals;
  Value value;
};

struct PostSort {
  std::string fieldName;
  SemanticType type = SemanticType::Text;
  SortDirection direction = SortDirection::Asc;
};

struct PostAggregate {
  std::string fieldName;
  AggFunction function = AggFunction::Average;
};

struct PostOpsResult {
  std::vector<Row> rows;
  // Set when an aggregate was requested and at least one value took part.
  std::optional<double> scalar;
  // Rows skipped because a referenced field was absent or unreadable.
  std::size_t missingField = 0;
};

/// Typed view of a raw cell, or nullopt when absent or unreadable.
/// Numbers accept JSON numbers and numeric strings; dates keep the
/// calendar part of an ISO timestamp; text folds case.
std::optional<Value> typed_cell(const Row& row, const std::string& field, SemanticType type);

/// Compares a cell against a filter value under the field's type.
bool satisfies(const Value& cell, Operator op, const Value& operand);

/// Filters conjunctively, then sorts stably (rows lacking the sort field
/// go last), then folds the aggregate over what is left. With no
/// operations the rows come back unchanged.
PostOpsResult apply_post_ops(std::vector<Row> rows, const std::vector<PostFilter>& filters,
                             const std::optional<PostSort>& sort, const std::optional<PostAggregate>& aggregate);

}  // namespace odcb
