// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/model/document.hpp"

#include "odcb/error.hpp"

namespace odcb {

using json = nlohmann::ordered_json;

namespace {

json annotation_doc(const BotAnnotation& bot) {
  return json{{"toExpose", bot.toExpose}, {"readableName", bot.readableName}, {"synonyms", bot.synonyms}};
}

[[noreturn]] void malformed(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::MalformedDocument, where + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) malformed(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) malformed(where, std::string("missing key '") + key + "'");
  return *it;
}

std::string string_member(const json& obj, const char* key, const std::string& where) {
  const auto& v = member(obj, key, where);
  if (!v.is_string()) malformed(where + "." + key, "expected a string");
  return v.get<std::string>();
}

bool bool_member(const json& obj, const char* key, const std::string& where) {
  const auto& v = member(obj, key, where);
  if (!v.is_boolean()) malformed(where + "." + key, "expected a boolean");
  return v.get<bool>();
}

const json& array_member(const json& obj, const char* key, const std::string& where) {
  const auto& v = member(obj, key, where);
  if (!v.is_array()) malformed(where + "." + key, "expected an array");
  return v;
}

BotAnnotation read_annotation(const json& doc, const std::string& where) {
  BotAnnotation bot;
  bot.toExpose = bool_member(doc, "toExpose", where);
  bot.readableName = string_member(doc, "readableName", where);
  for (auto& s : array_member(doc, "synonyms", where)) {
    if (!s.is_string()) malformed(where + ".synonyms", "expected strings");
    bot.synonyms.push_back(s.get<std::string>());
  }
  return bot;
}

PropertyDef read_property(const json& doc, const std::string& where) {
  PropertyDef p;
  p.name = string_member(doc, "name", where);
  const std::string here = where + "." + p.name;
  auto type = semantic_type_from_string(string_member(doc, "semanticType", here));
  if (!type) malformed(here, "unknown semanticType");
  p.semanticType = *type;
  p.bot = read_annotation(member(doc, "bot", here), here + ".bot");
  p.toFilterWith = bool_member(doc, "toFilterWith", here);
  const auto& binding = member(doc, "binding", here);
  p.binding.fieldName = string_member(binding, "fieldName", here + ".binding");
  p.binding.sourceType = string_member(binding, "sourceType", here + ".binding");
  if (auto it = doc.find("componentRef"); it != doc.end() && !it->is_null()) {
    if (!it->is_string()) malformed(here + ".componentRef", "expected a string");
    p.componentRef = it->get<std::string>();
  }
  return p;
}

}  // namespace

json persist(const DataModel& model) {
  json concepts = json::array();
  for (auto& c : model.concepts) {
    json props = json::array();
    for (auto& p : c.properties) {
      json pd = {
          {"name", p.name},
          {"semanticType", std::string(to_string(p.semanticType))},
          {"bot", annotation_doc(p.bot)},
          {"toFilterWith", p.toFilterWith},
          {"binding", {{"fieldName", p.binding.fieldName}, {"sourceType", p.binding.sourceType}}},
      };
      if (p.componentRef) pd["componentRef"] = *p.componentRef;
      props.push_back(std::move(pd));
    }
    concepts.push_back({{"name", c.name}, {"core", c.core}, {"bot", annotation_doc(c.bot)}, {"properties", std::move(props)}});
  }
  return json{
      {"name", model.name},
      {"version", model.version},
      {"binding",
       {{"apiType", std::string(to_string(model.binding.apiType))},
        {"domain", model.binding.domain},
        {"resourcePath", model.binding.resourcePath}}},
      {"concepts", std::move(concepts)},
  };
}

DataModel restore(const json& document) {
  if (!document.is_object()) malformed("document", "expected an object");
  DataModel model;
  model.version = string_member(document, "version", "document");
  if (model.version != kModelSchemaVersion)
    throw Error(ErrorCode::SchemaVersionMismatch,
                "document version '" + model.version + "', expected '" + std::string(kModelSchemaVersion) + "'");
  model.name = string_member(document, "name", "document");

  const auto& binding = member(document, "binding", "document");
  auto api = api_type_from_string(string_member(binding, "apiType", "binding"));
  if (!api) malformed("binding.apiType", "unknown api type");
  model.binding.apiType = *api;
  model.binding.domain = string_member(binding, "domain", "binding");
  model.binding.resourcePath = string_member(binding, "resourcePath", "binding");

  for (auto& cd : array_member(document, "concepts", "document")) {
    ConceptClass c;
    c.name = string_member(cd, "name", "concept");
    c.core = bool_member(cd, "core", c.name);
    c.bot = read_annotation(member(cd, "bot", c.name), c.name + ".bot");
    for (auto& pd : array_member(cd, "properties", c.name)) c.properties.push_back(read_property(pd, c.name));
    model.concepts.push_back(std::move(c));
  }
  return model;
}

std::string persist_text(const DataModel& model) { return persist(model).dump(2) + "\n"; }

DataModel restore_text(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::MalformedDocument, "document is not valid JSON");
  return restore(doc);
}

}  // namespace odcb
