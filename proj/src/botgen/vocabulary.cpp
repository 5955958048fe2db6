// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/botgen/vocabulary.hpp"

#include <algorithm>
#include <utility>

#include "odcb/model/text.hpp"

namespace odcb {

namespace {

template <class E, size_t N>
std::string_view name_of(const std::pair<E, std::string_view> (&table)[N], E value) {
  for (auto& [k, v] : table)
    if (k == value) return v;
  return "";
}

template <class E, size_t N>
std::optional<E> value_of(const std::pair<E, std::string_view> (&table)[N], std::string_view name) {
  for (auto& [k, v] : table)
    if (v == name) return k;
  return std::nullopt;
}

constexpr std::pair<IntentKind, std::string_view> kIntentNames[] = {
    {IntentKind::DirectSearch, "DirectSearch"},   {IntentKind::GuidedSearch, "GuidedSearch"},
    {IntentKind::AddFilter, "AddFilter"},         {IntentKind::ChooseOperator, "ChooseOperator"},
    {IntentKind::ProvideValue, "ProvideValue"},   {IntentKind::EndFilter, "EndFilter"},
    {IntentKind::SelectField, "SelectField"},     {IntentKind::ShowResult, "ShowResult"},
    {IntentKind::AddPostFilter, "AddPostFilter"}, {IntentKind::SortOrderBy, "SortOrderBy"},
    {IntentKind::NextPage, "NextPage"},           {IntentKind::AddPostFunction, "AddPostFunction"},
};

constexpr std::pair<Operator, std::string_view> kOperatorNames[] = {
    {Operator::Equals, "equals"},
    {Operator::NotEquals, "notEquals"},
    {Operator::LessThan, "lessThan"},
    {Operator::GreaterThan, "greaterThan"},
    {Operator::Contains, "contains"},
};

constexpr std::pair<SortDirection, std::string_view> kDirectionNames[] = {
    {SortDirection::Asc, "asc"},
    {SortDirection::Desc, "desc"},
};

constexpr std::pair<AggFunction, std::string_view> kFunctionNames[] = {
    {AggFunction::Average, "average"},
    {AggFunction::Minimum, "minimum"},
    {AggFunction::Maximum, "maximum"},
};

}  // namespace

std::string_view to_string(IntentKind k) noexcept { return name_of(kIntentNames, k); }
std::optional<IntentKind> intent_kind_from_string(std::string_view s) noexcept { return value_of(kIntentNames, s); }
std::string_view to_string(Operator op) noexcept { return name_of(kOperatorNames, op); }
std::optional<Operator> operator_from_string(std::string_view s) noexcept { return value_of(kOperatorNames, s); }
std::string_view to_string(SortDirection d) noexcept { return name_of(kDirectionNames, d); }
std::optional<SortDirection> sort_direction_from_string(std::string_view s) noexcept {
  return value_of(kDirectionNames, s);
}
std::string_view to_string(AggFunction f) noexcept { return name_of(kFunctionNames, f); }
std::optional<AggFunction> agg_function_from_string(std::string_view s) noexcept { return value_of(kFunctionNames, s); }

std::vector<Operator> operators_for(SemanticType type) {
  switch (type) {
    case SemanticType::Number:
    case SemanticType::DateTime:
      return {Operator::Equals, Operator::NotEquals, Operator::LessThan, Operator::GreaterThan};
    case SemanticType::Text:
    case SemanticType::Url:
      return {Operator::Equals, Operator::NotEquals, Operator::Contains};
    case SemanticType::Boolean:
      return {Operator::Equals};
    case SemanticType::GeoPoint:
    case SemanticType::Composite:
      return {};
  }
  return {};
}

bool operator_valid_for(Operator op, SemanticType type) {
  auto ops = operators_for(type);
  return std::find(ops.begin(), ops.end(), op) != ops.end();
}

std::vector<std::string> element_phrases(const BotAnnotation& bot) {
  std::vector<std::string> out;
  auto add = [&](const std::string& s) {
    auto phrase = text::to_lower(text::join(text::split_words(s), " "));
    if (!phrase.empty() && std::find(out.begin(), out.end(), phrase) == out.end()) out.push_back(std::move(phrase));
  };
  add(bot.readableName);
  for (auto& s : bot.synonyms) add(s);
  return out;
}

std::vector<PropertyPath> field_domain(IntentKind kind, const DataModel& model) {
  std::vector<PropertyPath> out;
  for (auto& path : exposed_leaves(model)) {
    const auto* p = find_property(model, path);
    bool keep = false;
    switch (kind) {
      case IntentKind::DirectSearch:
      case IntentKind::AddFilter:
        keep = p->toFilterWith && !operators_for(p->semanticType).empty();
        break;
      case IntentKind::AddPostFilter:
        keep = !operators_for(p->semanticType).empty();
        break;
      case IntentKind::SelectField:
      case IntentKind::SortOrderBy:
        keep = true;
        break;
      case IntentKind::AddPostFunction:
        keep = p->semanticType == SemanticType::Number;
        break;
      default:
        break;
    }
    if (keep) out.push_back(path);
  }
  return out;
}

}  // namespace odcb
