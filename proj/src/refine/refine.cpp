// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/refine/refine.hpp"

#include <algorithm>

#include "odcb/error.hpp"
#include "odcb/model/normalize.hpp"
#include "odcb/model/text.hpp"
#include "odcb/model/validate.hpp"

namespace odcb {

namespace {

void default_annotation(BotAnnotation& bot, const std::string& name) {
  if (!bot.readableName.empty()) return;
  bot.toExpose = true;
  bot.readableName = text::humanize(name);
  bot.synonyms.clear();
}

std::string clean_phrase(const std::string& s) { return text::join(text::split_words(s), " "); }

// Resolves a path to its annotation; property is null for concept paths.
struct Target {
  ConceptClass* concept_class = nullptr;
  PropertyDef* property = nullptr;
  BotAnnotation& bot() const { return property ? property->bot : concept_class->bot; }
};

Target resolve(DataModel& model, const ElementPath& path) {
  Target t;
  t.concept_class = model.find_concept(path.concept_name);
  if (!t.concept_class) throw Error(ErrorCode::UnknownPath, "no concept '" + path.concept_name + "'");
  if (path.property) {
    t.property = t.concept_class->find_property(*path.property);
    if (!t.property) throw Error(ErrorCode::UnknownPath, "no property '" + path.str() + "'");
  }
  return t;
}

void ensure_valid(const DataModel& model, const std::string& what) {
  auto report = validate(model);
  if (!report.empty()) throw Error(ErrorCode::InvariantViolation, what + " breaks the model:\n" + report.describe());
}

}  // namespace

DataModel apply_default_annotations(const DataModel& model) {
  DataModel out = model;
  for (auto& c : out.concepts) {
    default_annotation(c.bot, c.name);
    for (auto& p : c.properties) default_annotation(p.bot, p.name);
  }
  return out;
}

DataModel set_annotation(const DataModel& model, const ElementPath& path, const AnnotationChange& change) {
  DataModel out = model;
  Target target = resolve(out, path);
  BotAnnotation& bot = target.bot();
  const std::string where = path.str();

  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, change::ToExpose>) {
          bot.toExpose = c.value;
        } else if constexpr (std::is_same_v<T, change::ReadableName>) {
          bot.readableName = clean_phrase(c.value);
        } else if constexpr (std::is_same_v<T, change::AddSynonym>) {
          auto s = text::to_lower(clean_phrase(c.value));
          if (std::find(bot.synonyms.begin(), bot.synonyms.end(), s) != bot.synonyms.end())
            throw Error(ErrorCode::InvariantViolation, where + " already has synonym '" + s + "'");
          bot.synonyms.push_back(std::move(s));
        } else if constexpr (std::is_same_v<T, change::RemoveSynonym>) {
          auto s = text::to_lower(clean_phrase(c.value));
          auto it = std::find(bot.synonyms.begin(), bot.synonyms.end(), s);
          if (it == bot.synonyms.end()) throw Error(ErrorCode::InvariantViolation, where + " has no synonym '" + s + "'");
          bot.synonyms.erase(it);
        } else {
          if (!target.property) throw Error(ErrorCode::InvariantViolation, "toFilterWith applies to properties only");
          if (!target.property->is_leaf())
            throw Error(ErrorCode::InvariantViolation, where + " is Composite and cannot be filtered on");
          target.property->toFilterWith = c.value;
        }
      },
      change);

  ensure_valid(out, "change to " + where);
  return out;
}

DataModel set_binding(const DataModel& model, const ElementPath& path, const std::string& field_name) {
  if (!path.property) throw Error(ErrorCode::UnknownPath, "'" + path.str() + "' is not a property path");
  DataModel out = model;
  Target target = resolve(out, path);
  if (!target.property->is_leaf())
    throw Error(ErrorCode::CompositeProperty, path.str() + " is Composite and has no field binding");
  if (text::trim(field_name).empty()) throw Error(ErrorCode::InvariantViolation, "field name must not be empty");
  target.property->binding.fieldName = field_name;
  return out;
}

std::vector<RefinementCommand> parse_refinement_script(const nlohmann::ordered_json& script) {
  if (!script.is_array()) throw Error(ErrorCode::MalformedDocument, "refinement script must be a JSON array");
  std::vector<RefinementCommand> commands;
  for (size_t i = 0; i < script.size(); ++i) {
    const auto& item = script[i];
    const std::string where = "command " + std::to_string(i);
    if (!item.is_object() || !item.contains("op") || !item["op"].is_string() || !item.contains("path") ||
        !item["path"].is_string() || !item.contains("value"))
      throw Error(ErrorCode::MalformedDocument, where + ": expected {op, path, value}");
    commands.push_back({item["op"].get<std::string>(), item["path"].get<std::string>(), item["value"]});
  }
  return commands;
}

namespace {

DataModel apply_one(const DataModel& model, const RefinementCommand& cmd) {
  auto need_bool = [&] {
    if (!cmd.value.is_boolean()) throw Error(ErrorCode::MalformedDocument, cmd.op + " expects a boolean value");
    return cmd.value.get<bool>();
  };
  auto need_string = [&] {
    if (!cmd.value.is_string()) throw Error(ErrorCode::MalformedDocument, cmd.op + " expects a string value");
    return cmd.value.get<std::string>();
  };
  const auto path = ElementPath::parse(cmd.path);

  if (cmd.op == "toExpose") return set_annotation(model, path, change::ToExpose{need_bool()});
  if (cmd.op == "readableName") return set_annotation(model, path, change::ReadableName{need_string()});
  if (cmd.op == "addSynonym") return set_annotation(model, path, change::AddSynonym{need_string()});
  if (cmd.op == "removeSynonym") return set_annotation(model, path, change::RemoveSynonym{need_string()});
  if (cmd.op == "toFilterWith") return set_annotation(model, path, change::ToFilterWith{need_bool()});
  if (cmd.op == "setBinding") return set_binding(model, path, need_string());
  if (cmd.op == "normalize") {
    if (!cmd.value.is_array()) throw Error(ErrorCode::MalformedDocument, "normalize expects an array of names");
    Grouping g{cmd.path, {}};
    for (auto& v : cmd.value) {
      if (!v.is_string()) throw Error(ErrorCode::MalformedDocument, "normalize expects an array of names");
      g.properties.push_back(v.get<std::string>());
    }
    return normalize(model, {g});
  }
  throw Error(ErrorCode::MalformedDocument, "unknown refinement op '" + cmd.op + "'");
}

}  // namespace

DataModel apply_refinements(const DataModel& model, const std::vector<RefinementCommand>& commands) {
  DataModel current = model;
  for (size_t i = 0; i < commands.size(); ++i) {
    try {
      current = apply_one(current, commands[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "command " + std::to_string(i) + " (" + commands[i].op + " " + commands[i].path +
                                "): " + e.what());
    }
  }
  return current;
}

}  // namespace odcb
