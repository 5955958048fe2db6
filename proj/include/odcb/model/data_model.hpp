// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace odcb {

enum class SemanticType { Text, Number, Boolean, DateTime, Url, GeoPoint, Composite };

enum class ApiType { Socrata, CKAN, OData, Adhoc };

std::string_view to_string(SemanticType t) noexcept;
std::optional<SemanticType> semantic_type_from_string(std::string_view s) noexcept;
std::string_view to_string(ApiType t) noexcept;
std::optional<ApiType> api_type_from_string(std::string_view s) noexcept;

/// Conversation-facing vocabulary and visibility of a model element.
struct BotAnnotation {
  bool toExpose = false;
  std::string readableName;
  std::vector<std::string> synonyms;

  bool operator==(const BotAnnotation&) const = default;
};

/// Where a property lives in the source API.
struct FieldBinding {
  std::string fieldName;
  std::string sourceType;

  bool operator==(const FieldBinding&) const = default;
};

struct PropertyDef {
  std::string name;
  SemanticType semanticType = SemanticType::Text;
  BotAnnotation bot;
  bool toFilterWith = false;
  FieldBinding binding;
  // Set exactly when semanticType == Composite; names the nested concept.
  std::optional<std::string> componentRef;

  bool is_leaf() const noexcept { return semanticType != SemanticType::Composite; }
  bool operator==(const PropertyDef&) const = default;
};

struct ConceptClass {
  std::string name;
  bool core = false;
  std::vector<PropertyDef> properties;
  BotAnnotation bot;

  const PropertyDef* find_property(std::string_view property) const noexcept;
  PropertyDef* find_property(std::string_view property) noexcept;
  bool operator==(const ConceptClass&) const = default;
};

struct ApiBinding {
  ApiType apiType = ApiType::Socrata;
  std::string domain;
  std::string resourcePath;

  bool operator==(const ApiBinding&) const = default;
};

inline constexpr std::string_view kModelSchemaVersion = "1";

/// Annotated intermediate representation of one Open Data API: a tree of
/// concepts rooted at the single core concept, plus how to reach the API.
struct DataModel {
  std::string name;
  std::vector<ConceptClass> concepts;
  ApiBinding binding;
  std::string version{kModelSchemaVersion};

  const ConceptClass* find_concept(std::string_view concept_name) const noexcept;
  ConceptClass* find_concept(std::string_view concept_name) noexcept;
  // nullptr unless exactly one concept is marked core.
  const ConceptClass* core_concept() const noexcept;
  bool operator==(const DataModel&) const = default;
};

/// "Concept" or "Concept.property".
struct ElementPath {
  std::string concept_name;
  std::optional<std::string> property;

  static ElementPath parse(std::string_view text);
  std::string str() const;
  bool operator==(const ElementPath&) const = default;
};

/// Reference to a property of a concept, printed "Concept.property".
struct PropertyPath {
  std::string concept_name;
  std::string property;

  std::string str() const { return concept_name + "." + property; }
  // Throws Error(UnknownPath) when the text is not "Concept.property".
  static PropertyPath parse(std::string_view text);
  auto operator<=>(const PropertyPath&) const = default;
};

const PropertyDef* find_property(const DataModel& model, const PropertyPath& path) noexcept;

/// Leaf properties reachable from the core concept through exposed
/// concepts and exposed composite properties, in declaration order.
std::vector<PropertyPath> exposed_leaves(const DataModel& model);

/// Every leaf property of every concept, concept-major order.
std::vector<PropertyPath> all_leaves(const DataModel& model);

/// Copy of the model with hidden concepts and properties removed. Leaves
/// exactly what a generated bot may talk about.
DataModel exposed_projection(const DataModel& model);

}  // namespace odcb
