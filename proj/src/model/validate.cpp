// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/model/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "odcb/model/source_types.hpp"
#include "odcb/model/text.hpp"

namespace odcb {

bool ValidationReport::has_rule(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

std::string ValidationReport::describe() const {
  std::ostringstream out;
  for (auto& v : violations) out << "error   " << v.path << " [" << v.rule << "] " << v.message << "\n";
  for (auto& v : warnings) out << "warning " << v.path << " [" << v.rule << "] " << v.message << "\n";
  return out.str();
}

namespace {

class Checker {
 public:
  explicit Checker(const DataModel& model) : model_(model) {}

  ValidationReport run() {
    if (!text::is_identifier(model_.name)) fail("model", rules::kIdentifier, "model name is not an identifier");
    check_binding();
    check_concepts();
    check_composition();
    return std::move(report_);
  }

 private:
  void fail(std::string path, const char* rule, std::string message) {
    report_.violations.push_back({std::move(path), rule, std::move(message)});
  }
  void warn(std::string path, const char* rule, std::string message) {
    report_.warnings.push_back({std::move(path), rule, std::move(message)});
  }

  void check_binding() {
    if (!text::is_hostname(model_.binding.domain))
      fail("binding", rules::kValidDomain, "'" + model_.binding.domain + "' is not a valid hostname");
    if (model_.binding.resourcePath.empty()) fail("binding", rules::kResourcePathRequired, "resourcePath is empty");
  }

  void check_annotation(const std::string& path, const BotAnnotation& bot) {
    if (bot.toExpose && text::trim(bot.readableName).empty())
      fail(path, rules::kReadableNameRequired, "exposed element has no readable name");
    std::set<std::string> seen;
    const auto readable = text::to_lower(bot.readableName);
    for (auto& s : bot.synonyms) {
      auto folded = text::to_lower(s);
      if (text::trim(folded).empty()) fail(path, rules::kSynonymsDistinct, "empty synonym");
      if (!seen.insert(folded).second) fail(path, rules::kSynonymsDistinct, "duplicate synonym '" + s + "'");
      if (!readable.empty() && folded == readable)
        fail(path, rules::kSynonymsDistinct, "synonym '" + s + "' repeats the readable name");
    }
  }

  void check_concepts() {
    std::set<std::string> names;
    int cores = 0;
    for (auto& c : model_.concepts) {
      if (!text::is_identifier(c.name)) fail(c.name, rules::kIdentifier, "concept name is not an identifier");
      if (!names.insert(c.name).second) fail(c.name, rules::kUniqueConceptName, "duplicate concept name");
      if (c.core) ++cores;
      check_annotation(c.name, c.bot);

      std::set<std::string> props;
      for (auto& p : c.properties) {
        const std::string path = c.name + "." + p.name;
        if (!text::is_identifier(p.name)) fail(path, rules::kIdentifier, "property name is not an identifier");
        if (!props.insert(p.name).second) fail(path, rules::kUniquePropertyName, "duplicate property name");
        if (p.componentRef.has_value() != (p.semanticType == SemanticType::Composite))
          fail(path, rules::kCompositeIffComponentRef, "componentRef must be set exactly for Composite properties");
        if (p.toFilterWith && !p.bot.toExpose)
          fail(path, rules::kFilterableImpliesExposed, "filterable property is hidden");
        check_annotation(path, p.bot);
        if (p.is_leaf()) {
          if (p.binding.fieldName.empty()) fail(path, rules::kFieldNameRequired, "leaf property has no fieldName");
          if (!map_source_type(model_.binding.apiType, p.binding.sourceType).known)
            warn(path, rules::kUnknownSourceType,
                 "source type '" + p.binding.sourceType + "' is unknown for " +
                     std::string(to_string(model_.binding.apiType)) + ", treated as Text");
        }
      }
    }
    if (cores != 1)
      fail("model", rules::kExactlyOneCore, "expected exactly one core concept, found " + std::to_string(cores));
  }

  void check_composition() {
    std::map<std::string, int> references;
    for (auto& c : model_.concepts) {
      for (auto& p : c.properties) {
        if (!p.componentRef) continue;
        const auto* target = model_.find_concept(*p.componentRef);
        if (!target) {
          fail(c.name + "." + p.name, rules::kCompositionTree, "componentRef '" + *p.componentRef + "' does not exist");
          continue;
        }
        if (target->core) fail(c.name + "." + p.name, rules::kCompositionTree, "componentRef points at the core concept");
        ++references[target->name];
      }
    }
    for (auto& c : model_.concepts) {
      if (c.core) continue;
      int n = references[c.name];
      if (n != 1)
        fail(c.name, rules::kCompositionTree,
             "non-core concept must be referenced by exactly one property, found " + std::to_string(n));
    }
    // With single parents, reachability from the core rules out cycles.
    const auto* core = model_.core_concept();
    if (!core) return;
    std::set<std::string> reached{core->name};
    std::vector<const ConceptClass*> stack{core};
    while (!stack.empty()) {
      const auto* c = stack.back();
      stack.pop_back();
      for (auto& p : c->properties) {
        if (!p.componentRef) continue;
        const auto* child = model_.find_concept(*p.componentRef);
        if (child && reached.insert(child->name).second) stack.push_back(child);
      }
    }
    for (auto& c : model_.concepts)
      if (!reached.count(c.name))
        fail(c.name, rules::kCompositionTree, "concept is not reachable from the core concept");
  }

  const DataModel& model_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate(const DataModel& model) { return Checker(model).run(); }

}  // namespace odcb
