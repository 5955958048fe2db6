// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odcb/model/data_model.hpp"

namespace odcb {

/// The twelve intent kinds, in the order ties are broken.
enum class IntentKind {
  DirectSearch,
  GuidedSearch,
  AddFilter,
  ChooseOperator,
  ProvideValue,
  EndFilter,
  SelectField,
  ShowResult,
  AddPostFilter,
  SortOrderBy,
  NextPage,
  AddPostFunction,
};

inline constexpr std::array<IntentKind, 12> kAllIntentKinds{
    IntentKind::DirectSearch,  IntentKind::GuidedSearch, IntentKind::AddFilter,     IntentKind::ChooseOperator,
    IntentKind::ProvideValue,  IntentKind::EndFilter,    IntentKind::SelectField,   IntentKind::ShowResult,
    IntentKind::AddPostFilter, IntentKind::SortOrderBy,  IntentKind::NextPage,      IntentKind::AddPostFunction,
};

std::string_view to_string(IntentKind k) noexcept;
std::optional<IntentKind> intent_kind_from_string(std::string_view s) noexcept;

enum class Operator { Equals, NotEquals, LessThan, GreaterThan, Contains };
enum class SortDirection { Asc, Desc };
enum class AggFunction { Average, Minimum, Maximum };

std::string_view to_string(Operator op) noexcept;
std::optional<Operator> operator_from_string(std::string_view s) noexcept;
std::string_view to_string(SortDirection d) noexcept;
std::optional<SortDirection> sort_direction_from_string(std::string_view s) noexcept;
std::string_view to_string(AggFunction f) noexcept;
std::optional<AggFunction> agg_function_from_string(std::string_view s) noexcept;

/// Operators a filter on a property of this type may use. Number and
/// DateTime: equals, not equals, less than, greater than. Text and Url:
/// equals, not equals, contains. Boolean: equals. Others: none.
std::vector<Operator> operators_for(SemanticType type);
bool operator_valid_for(Operator op, SemanticType type);

/// Lowercase, whitespace-collapsed phrases a user may use to name the
/// element: the readable name followed by the synonyms, duplicates dropped.
std::vector<std::string> element_phrases(const BotAnnotation& bot);

/// Properties an intent's field slot ranges over.
///   DirectSearch, AddFilter   filterable exposed leaves
///   AddPostFilter             exposed leaves that admit an operator
///   SelectField, SortOrderBy  exposed leaves
///   AddPostFunction           exposed Number leaves
///   others                    none
std::vector<PropertyPath> field_domain(IntentKind kind, const DataModel& model);

}  // namespace odcb
