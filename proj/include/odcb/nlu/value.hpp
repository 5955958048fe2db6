// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <chrono>
#include <string>
#include <variant>

#include "odcb/botgen/vocabulary.hpp"
#include "odcb/model/data_model.hpp"

namespace odcb {

namespace value {

/// Free text. `original` keeps the user's casing for querying; matching
/// compares the folded form.
struct Text {
  std::string original;
  std::string folded() const;
  bool operator==(const Text&) const = default;
};

struct Number {
  double value = 0;
  bool operator==(const Number&) const = default;
};

struct Bool {
  bool value = false;
  bool operator==(const Bool&) const = default;
};

struct Date {
  std::chrono::year_month_day value;
  bool operator==(const Date&) const = default;
};

}  // namespace value

using Value = std::variant<value::Text, value::Number, value::Bool, value::Date, PropertyPath, Operator, SortDirection,
                           AggFunction>;

std::string describe(const Value& v);

// "2020-06-15"
std::string iso_date(std::chrono::year_month_day d);

/// Shortest decimal text that round-trips; integral values print without
/// a fraction ("14", "2.5", "-0.001").
std::string format_number(double x);

/// Typed value from user text. Surrounding double or single quotes are
/// stripped. Number accepts decimal literals, DateTime accepts ISO-8601
/// dates (a time part is ignored) plus "today" and "yesterday", Boolean
/// accepts true/false/yes/no. Locale-independent.
///
/// Throws Error(UnparsableValue).
Value parse_value(SemanticType type, std::string_view text, std::chrono::year_month_day today);

}  // namespace odcb
