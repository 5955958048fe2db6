// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/model/data_model.hpp"

#include <array>
#include <set>

#include "odcb/error.hpp"

namespace odcb {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownProperty: return "UnknownProperty";
    case ErrorCode::NameCollision: return "NameCollision";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::MalformedDescriptor: return "MalformedDescriptor";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::UnknownPath: return "UnknownPath";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::CompositeProperty: return "CompositeProperty";
    case ErrorCode::NoExposedConcept: return "NoExposedConcept";
    case ErrorCode::NoExposedProperties: return "NoExposedProperties";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::UnparsableValue: return "UnparsableValue";
    case ErrorCode::UnknownVocabulary: return "UnknownVocabulary";
    case ErrorCode::AmbiguousVocabulary: return "AmbiguousVocabulary";
    case ErrorCode::UnsupportedDialect: return "UnsupportedDialect";
    case ErrorCode::Transport: return "Transport";
  }
  return "Unknown";
}

namespace {

constexpr std::array<std::pair<SemanticType, std::string_view>, 7> kSemanticNames{{
    {SemanticType::Text, "Text"},
    {SemanticType::Number, "Number"},
    {SemanticType::Boolean, "Boolean"},
    {SemanticType::DateTime, "DateTime"},
    {SemanticType::Url, "Url"},
    {SemanticType::GeoPoint, "GeoPoint"},
    {SemanticType::Composite, "Composite"},
}};

constexpr std::array<std::pair<ApiType, std::string_view>, 4> kApiNames{{
    {ApiType::Socrata, "Socrata"},
    {ApiType::CKAN, "CKAN"},
    {ApiType::OData, "OData"},
    {ApiType::Adhoc, "Adhoc"},
}};

}  // namespace

std::string_view to_string(SemanticType t) noexcept {
  for (auto& [k, v] : kSemanticNames)
    if (k == t) return v;
  return "Text";
}

std::optional<SemanticType> semantic_type_from_string(std::string_view s) noexcept {
  for (auto& [k, v] : kSemanticNames)
    if (v == s) return k;
  return std::nullopt;
}

std::string_view to_string(ApiType t) noexcept {
  for (auto& [k, v] : kApiNames)
    if (k == t) return v;
  return "Adhoc";
}

std::optional<ApiType> api_type_from_string(std::string_view s) noexcept {
  for (auto& [k, v] : kApiNames)
    if (v == s) return k;
  return std::nullopt;
}

const PropertyDef* ConceptClass::find_property(std::string_view property) const noexcept {
  for (auto& p : properties)
    if (p.name == property) return &p;
  return nullptr;
}

PropertyDef* ConceptClass::find_property(std::string_view property) noexcept {
  for (auto& p : properties)
    if (p.name == property) return &p;
  return nullptr;
}

const ConceptClass* DataModel::find_concept(std::string_view concept_name) const noexcept {
  for (auto& c : concepts)
    if (c.name == concept_name) return &c;
  return nullptr;
}

ConceptClass* DataModel::find_concept(std::string_view concept_name) noexcept {
  for (auto& c : concepts)
    if (c.name == concept_name) return &c;
  return nullptr;
}

const ConceptClass* DataModel::core_concept() const noexcept {
  const ConceptClass* found = nullptr;
  for (auto& c : concepts) {
    if (!c.core) continue;
    if (found) return nullptr;
    found = &c;
  }
  return found;
}

ElementPath ElementPath::parse(std::string_view text) {
  ElementPath path;
  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    path.concept_name = std::string(text);
  } else {
    path.concept_name = std::string(text.substr(0, dot));
    path.property = std::string(text.substr(dot + 1));
  }
  return path;
}

std::string ElementPath::str() const {
  return property ? concept_name + "." + *property : concept_name;
}

PropertyPath PropertyPath::parse(std::string_view text) {
  auto dot = text.find('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == text.size() ||
      text.find('.', dot + 1) != std::string_view::npos)
    throw Error(ErrorCode::UnknownPath, "not a property path: " + std::string(text));
  return {std::string(text.substr(0, dot)), std::string(text.substr(dot + 1))};
}

const PropertyDef* find_property(const DataModel& model, const PropertyPath& path) noexcept {
  const auto* c = model.find_concept(path.concept_name);
  return c ? c->find_property(path.property) : nullptr;
}

namespace {

void collect_exposed(const DataModel& model, const ConceptClass& concept_class,
                     std::set<std::string>& visiting, std::vector<PropertyPath>& out) {
  if (!concept_class.bot.toExpose || !visiting.insert(concept_class.name).second) return;
  for (auto& p : concept_class.properties) {
    if (!p.bot.toExpose) continue;
    if (p.is_leaf()) {
      out.push_back({concept_class.name, p.name});
    } else if (p.componentRef) {
      if (const auto* child = model.find_concept(*p.componentRef))
        collect_exposed(model, *child, visiting, out);
    }
  }
}

}  // namespace

std::vector<PropertyPath> exposed_leaves(const DataModel& model) {
  std::vector<PropertyPath> out;
  const auto* core = model.core_concept();
  if (!core) return out;
  std::set<std::string> visiting;
  collect_exposed(model, *core, visiting, out);
  return out;
}

std::vector<PropertyPath> all_leaves(const DataModel& model) {
  std::vector<PropertyPath> out;
  for (auto& c : model.concepts)
    for (auto& p : c.properties)
      if (p.is_leaf()) out.push_back({c.name, p.name});
  return out;
}

DataModel exposed_projection(const DataModel& model) {
  DataModel out = model;
  out.concepts.clear();
  const auto* core = model.core_concept();
  if (!core) return model;

  std::set<std::string> keep;
  std::vector<const ConceptClass*> stack{core};
  keep.insert(core->name);
  while (!stack.empty()) {
    const auto* c = stack.back();
    stack.pop_back();
    for (auto& p : c->properties) {
      if (!p.bot.toExpose || p.is_leaf() || !p.componentRef) continue;
      const auto* child = model.find_concept(*p.componentRef);
      if (child && child->bot.toExpose && keep.insert(child->name).second) stack.push_back(child);
    }
  }

  for (auto& c : model.concepts) {
    if (!keep.count(c.name)) continue;
    ConceptClass copy = c;
    copy.properties.clear();
    for (auto& p : c.properties) {
      if (!p.bot.toExpose) continue;
      if (!p.is_leaf() && (!p.componentRef || !keep.count(*p.componentRef))) continue;
      copy.properties.push_back(p);
    }
    out.concepts.push_back(std::move(copy));
  }
  return out;
}

}  // namespace odcb
