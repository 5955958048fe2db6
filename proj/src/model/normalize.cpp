// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/model/normalize.hpp"

#include <algorithm>
#include <set>

#include "odcb/error.hpp"
#include "odcb/model/text.hpp"

namespace odcb {

DataModel normalize(const DataModel& model, const std::vector<Grouping>& groupings) {
  if (groupings.empty()) return model;

  DataModel out = model;
  auto core_it = std::find_if(out.concepts.begin(), out.concepts.end(), [](const ConceptClass& c) { return c.core; });
  if (core_it == out.concepts.end() || model.core_concept() == nullptr)
    throw Error(ErrorCode::UnknownProperty, "model has no single core concept to normalize");
  const size_t core_index = static_cast<size_t>(core_it - out.concepts.begin());

  std::set<std::string> concept_names;
  for (auto& c : model.concepts) concept_names.insert(c.name);
  std::set<std::string> listed;
  std::set<std::string> composite_names;

  // Check everything before mutating so failures leave no partial result.
  for (auto& g : groupings) {
    if (!text::is_identifier(g.conceptName))
      throw Error(ErrorCode::InvariantViolation, "'" + g.conceptName + "' is not a valid concept name");
    if (g.properties.empty())
      throw Error(ErrorCode::InvariantViolation, "group '" + g.conceptName + "' lists no properties");
    if (!concept_names.insert(g.conceptName).second)
      throw Error(ErrorCode::NameCollision, "concept '" + g.conceptName + "' already exists");
    for (auto& name : g.properties) {
      const auto* p = model.core_concept()->find_property(name);
      if (!p || !p->is_leaf())
        throw Error(ErrorCode::UnknownProperty, "core concept has no leaf property '" + name + "'");
      if (!listed.insert(name).second)
        throw Error(ErrorCode::NameCollision, "property '" + name + "' listed in more than one group");
    }
    composite_names.insert(text::lower_first(g.conceptName));
  }
  for (auto& p : model.core_concept()->properties) {
    if (!listed.count(p.name) && composite_names.count(p.name))
      throw Error(ErrorCode::NameCollision, "core concept already has a property named '" + p.name + "'");
  }
  if (composite_names.size() != groupings.size())
    throw Error(ErrorCode::NameCollision, "two groups derive the same composite property name");

  for (auto& g : groupings) {
    ConceptClass group;
    group.name = g.conceptName;
    group.core = false;
    group.bot = {true, text::humanize(g.conceptName), {}};
    auto& core_props = out.concepts[core_index].properties;
    for (auto& name : g.properties) {
      auto it = std::find_if(core_props.begin(), core_props.end(), [&](const PropertyDef& p) { return p.name == name; });
      group.properties.push_back(std::move(*it));
      core_props.erase(it);
    }

    PropertyDef composite;
    composite.name = text::lower_first(g.conceptName);
    composite.semanticType = SemanticType::Composite;
    composite.bot = {true, text::humanize(g.conceptName), {}};
    composite.componentRef = g.conceptName;
    core_props.push_back(std::move(composite));
    out.concepts.push_back(std::move(group));
  }
  return out;
}

}  // namespace odcb
