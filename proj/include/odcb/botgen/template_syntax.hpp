// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odcb/botgen/bot_definition.hpp"

namespace odcb {

inline constexpr std::string_view kConceptMarker = "concept";

/// One word of a training template: a lowercase literal, or a slot name
/// written `{name}` in the source text.
struct TemplateWord {
  std::string text;
  bool slot = false;
};

std::vector<TemplateWord> parse_template(std::string_view tmpl);

/// field -> FieldRef, operator -> Operator, value -> Value,
/// direction -> SortDirection, function -> AggFunction.
std::optional<SlotFill> fill_for_slot(std::string_view slot_name) noexcept;

}  // namespace odcb
