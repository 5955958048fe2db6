// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "odcb/botgen/vocabulary.hpp"
#include "odcb/model/data_model.hpp"

namespace odcb {

enum class StateId {
  Idle,
  AwaitingFilterField,
  AwaitingOperator,
  AwaitingValue,
  AwaitingFieldSelection,
  ShowingResults,
};

inline constexpr std::array<StateId, 6> kAllStates{
    StateId::Idle,          StateId::AwaitingFilterField,    StateId::AwaitingOperator,
    StateId::AwaitingValue, StateId::AwaitingFieldSelection, StateId::ShowingResults,
};

std::string_view to_string(StateId s) noexcept;
std::optional<StateId> state_from_string(std::string_view s) noexcept;

enum class SlotFill { FieldRef, Operator, Value, SortDirection, AggFunction };

std::string_view to_string(SlotFill f) noexcept;
std::optional<SlotFill> slot_fill_from_string(std::string_view s) noexcept;

struct SlotSpec {
  std::string name;
  SlotFill fills = SlotFill::Value;

  bool operator==(const SlotSpec&) const = default;
};

/// Training templates of one intent: literal words plus {slot} markers.
struct IntentTemplate {
  IntentKind kind = IntentKind::DirectSearch;
  std::vector<std::string> trainingTemplates;
  std::vector<SlotSpec> slots;
  std::vector<StateId> allowedStates;

  bool allowed_in(StateId s) const;
  bool operator==(const IntentTemplate&) const = default;
};

namespace actions {
inline constexpr std::string_view kStartGuided = "start_guided";
inline constexpr std::string_view kStartDirect = "start_direct";
inline constexpr std::string_view kChooseFilterField = "choose_filter_field";
inline constexpr std::string_view kChooseOperator = "choose_operator";
inline constexpr std::string_view kSetFilterValue = "set_filter_value";
inline constexpr std::string_view kEndFilters = "end_filters";
inline constexpr std::string_view kSelectField = "select_field";
inline constexpr std::string_view kExecuteQuery = "execute_query";
inline constexpr std::string_view kPostFilter = "post_filter";
inline constexpr std::string_view kSort = "sort";
inline constexpr std::string_view kNextPage = "next_page";
inline constexpr std::string_view kAggregate = "aggregate";
}  // namespace actions

struct Transition {
  StateId from = StateId::Idle;
  IntentKind intent = IntentKind::DirectSearch;
  std::string action;
  StateId to = StateId::Idle;

  bool operator==(const Transition&) const = default;
};

struct StateMachine {
  std::vector<StateId> states{kAllStates.begin(), kAllStates.end()};
  std::vector<Transition> transitions;
  StateId initial = StateId::Idle;

  const Transition* find(StateId from, IntentKind intent) const noexcept;
  bool operator==(const StateMachine&) const = default;
};

/// Closed-set surface forms: how users say operators, sort directions and
/// aggregation functions, plus the labels of the fixed quick replies.
struct Lexicon {
  std::map<Operator, std::vector<std::string>> operators;
  std::map<SortDirection, std::vector<std::string>> directions;
  std::map<AggFunction, std::vector<std::string>> functions;
  std::string endFiltersButton;
  std::string endFieldsButton;
  std::string nextPageButton;

  bool operator==(const Lexicon&) const = default;
};

/// Intent wording shipped as data. `{concept}` is instantiated at
/// generation time with the core concept's phrases; {field}, {operator},
/// {value}, {direction} and {function} stay as slots.
struct TemplatePack {
  std::map<IntentKind, std::vector<std::string>> intents;
  Lexicon lexicon;

  static const TemplatePack& defaults();
  // Throws Error(MalformedDocument) on unknown kinds, unknown slots or
  // missing intents.
  static TemplatePack from_json(const nlohmann::ordered_json& doc);
  nlohmann::ordered_json to_json() const;
};

struct BotDefinition {
  DataModel model;  // exposed projection of the source model
  std::vector<IntentTemplate> intents;
  StateMachine stateMachine;
  int pageSize = 10;
  Lexicon lexicon;

  const IntentTemplate* intent(IntentKind kind) const noexcept;
  bool operator==(const BotDefinition&) const = default;
};

}  // namespace odcb
