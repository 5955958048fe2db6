// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include <utility>

#include "odcb/botgen/bot_definition.hpp"
#include "odcb/botgen/template_syntax.hpp"
#include "odcb/error.hpp"
#include "odcb/model/text.hpp"
#include "lexicon_json.hpp"

namespace odcb {

using json = nlohmann::ordered_json;

namespace {

constexpr std::pair<StateId, std::string_view> kStateNames[] = {
    {StateId::Idle, "Idle"},
    {StateId::AwaitingFilterField, "AwaitingFilterField"},
    {StateId::AwaitingOperator, "AwaitingOperator"},
    {StateId::AwaitingValue, "AwaitingValue"},
    {StateId::AwaitingFieldSelection, "AwaitingFieldSelection"},
    {StateId::ShowingResults, "ShowingResults"},
};

constexpr std::pair<SlotFill, std::string_view> kFillNames[] = {
    {SlotFill::FieldRef, "FieldRef"},
    {SlotFill::Operator, "Operator"},
    {SlotFill::Value, "Value"},
    {SlotFill::SortDirection, "SortDirection"},
    {SlotFill::AggFunction, "AggFunction"},
};

constexpr std::pair<std::string_view, SlotFill> kSlotNames[] = {
    {"field", SlotFill::FieldRef},
    {"operator", SlotFill::Operator},
    {"value", SlotFill::Value},
    {"direction", SlotFill::SortDirection},
    {"function", SlotFill::AggFunction},
};

TemplatePack build_defaults() {
  TemplatePack p;
  using K = IntentKind;
  p.intents = {
      {K::DirectSearch,
       {"show me all the {concept} with {field} {operator} {value}", "show me the {concept} with {field} {operator} {value}",
        "find {concept} with {field} {operator} {value}"}},
      {K::GuidedSearch,
       {"show me the list of {concept}", "show me {concept}", "list {concept}", "i want to see {concept}"}},
      {K::AddFilter, {"{field}", "filter by {field}", "by {field}"}},
      {K::ChooseOperator, {"{operator}"}},
      {K::ProvideValue, {"{value}"}},
      {K::EndFilter, {"i don't want to add filters", "no more filters", "no filters"}},
      {K::SelectField, {"{field}", "add {field}", "show {field}"}},
      {K::ShowResult, {"i don't want to add fields", "no more fields", "show results"}},
      {K::AddPostFilter,
       {"add filter {field} {operator} {value}", "filter {field} {operator} {value}", "only {field} {operator} {value}"}},
      {K::SortOrderBy, {"sort by {field} {direction}", "order by {field} {direction}", "sort by {field}", "order by {field}"}},
      {K::NextPage, {"show me next page", "show me the next page", "next page", "more results"}},
      {K::AddPostFunction,
       {"calculate {function} of {field}", "calculate the {function} of {field}", "what is the {function} of {field}"}},
  };
  p.lexicon.operators = {
      {Operator::Equals, {"equals", "equals to", "equal to", "is", "="}},
      {Operator::NotEquals, {"not equals", "not equal to", "is not", "different from", "!="}},
      {Operator::LessThan, {"less than", "lower than", "below", "<"}},
      {Operator::GreaterThan, {"greater than", "more than", "above", ">"}},
      {Operator::Contains, {"contains"}},
  };
  p.lexicon.directions = {
      {SortDirection::Asc, {"asc", "ascending"}},
      {SortDirection::Desc, {"desc", "descending"}},
  };
  p.lexicon.functions = {
      {AggFunction::Average, {"average", "avg", "mean"}},
      {AggFunction::Minimum, {"minimum", "min"}},
      {AggFunction::Maximum, {"maximum", "max"}},
  };
  p.lexicon.endFiltersButton = "No more filters";
  p.lexicon.endFieldsButton = "No more fields";
  p.lexicon.nextPageButton = "show me next page";
  return p;
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedDocument, "template pack: " + what); }

std::vector<std::string> string_list(const json& v, const std::string& where) {
  if (!v.is_array()) malformed(where + " must be an array of strings");
  std::vector<std::string> out;
  for (auto& s : v) {
    if (!s.is_string()) malformed(where + " must be an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

template <class E, class FromString>
std::map<E, std::vector<std::string>> surface_map(const json& doc, const char* key, FromString from_string) {
  std::map<E, std::vector<std::string>> out;
  if (!doc.contains(key) || !doc[key].is_object()) malformed(std::string("missing object '") + key + "'");
  for (auto& [name, forms] : doc[key].items()) {
    auto e = from_string(name);
    if (!e) malformed("unknown " + std::string(key) + " entry '" + name + "'");
    out[*e] = string_list(forms, name);
    for (auto& f : out[*e]) f = text::to_lower(text::join(text::split_words(f), " "));
  }
  return out;
}

template <class E>
json surface_doc(const std::map<E, std::vector<std::string>>& m) {
  json out = json::object();
  for (auto& [k, forms] : m) out[std::string(to_string(k))] = forms;
  return out;
}

}  // namespace

std::string_view to_string(StateId s) noexcept {
  for (auto& [k, v] : kStateNames)
    if (k == s) return v;
  return "";
}

std::optional<StateId> state_from_string(std::string_view s) noexcept {
  for (auto& [k, v] : kStateNames)
    if (v == s) return k;
  return std::nullopt;
}

std::string_view to_string(SlotFill f) noexcept {
  for (auto& [k, v] : kFillNames)
    if (k == f) return v;
  return "";
}

std::optional<SlotFill> slot_fill_from_string(std::string_view s) noexcept {
  for (auto& [k, v] : kFillNames)
    if (v == s) return k;
  return std::nullopt;
}

std::optional<SlotFill> fill_for_slot(std::string_view slot_name) noexcept {
  for (auto& [k, v] : kSlotNames)
    if (k == slot_name) return v;
  return std::nullopt;
}

std::vector<TemplateWord> parse_template(std::string_view tmpl) {
  std::vector<TemplateWord> words;
  for (auto& w : text::split_words(tmpl)) {
    if (w.size() > 2 && w.front() == '{' && w.back() == '}')
      words.push_back({w.substr(1, w.size() - 2), true});
    else
      words.push_back({text::to_lower(w), false});
  }
  return words;
}

bool IntentTemplate::allowed_in(StateId s) const {
  for (auto a : allowedStates)
    if (a == s) return true;
  return false;
}

const Transition* StateMachine::find(StateId from, IntentKind intent) const noexcept {
  for (auto& t : transitions)
    if (t.from == from && t.intent == intent) return &t;
  return nullptr;
}

const IntentTemplate* BotDefinition::intent(IntentKind kind) const noexcept {
  for (auto& i : intents)
    if (i.kind == kind) return &i;
  return nullptr;
}

const TemplatePack& TemplatePack::defaults() {
  static const TemplatePack pack = build_defaults();
  return pack;
}

TemplatePack TemplatePack::from_json(const json& doc) {
  if (!doc.is_object()) malformed("expected an object");
  TemplatePack p;
  if (!doc.contains("intents") || !doc["intents"].is_object()) malformed("missing object 'intents'");
  for (auto& [name, templates] : doc["intents"].items()) {
    auto kind = intent_kind_from_string(name);
    if (!kind) malformed("unknown intent kind '" + name + "'");
    auto list = string_list(templates, name);
    if (list.empty()) malformed(name + " has no templates");
    for (auto& t : list)
      for (auto& w : parse_template(t))
        if (w.slot && w.text != kConceptMarker && !fill_for_slot(w.text))
          malformed("unknown slot '{" + w.text + "}' in " + name);
    p.intents[*kind] = std::move(list);
  }
  for (auto k : kAllIntentKinds)
    if (!p.intents.count(k)) malformed("missing intent " + std::string(to_string(k)));

  const json lex = doc.value("lexicon", json::object());
  p.lexicon.operators = surface_map<Operator>(lex, "operators", operator_from_string);
  p.lexicon.directions = surface_map<SortDirection>(lex, "directions", sort_direction_from_string);
  p.lexicon.functions = surface_map<AggFunction>(lex, "functions", agg_function_from_string);
  const json buttons = lex.value("buttons", json::object());
  auto button = [&](const char* key) {
    if (!buttons.contains(key) || !buttons[key].is_string()) malformed(std::string("missing button label '") + key + "'");
    return buttons[key].get<std::string>();
  };
  p.lexicon.endFiltersButton = button("endFilters");
  p.lexicon.endFieldsButton = button("endFields");
  p.lexicon.nextPageButton = button("nextPage");
  return p;
}

json lexicon_to_json(const Lexicon& lex) {
  return json{
      {"operators", surface_doc(lex.operators)},
      {"directions", surface_doc(lex.directions)},
      {"functions", surface_doc(lex.functions)},
      {"buttons",
       {{"endFilters", lex.endFiltersButton}, {"endFields", lex.endFieldsButton}, {"nextPage", lex.nextPageButton}}},
  };
}

Lexicon lexicon_from_json(const json& lex) {
  json wrapper = {{"intents", json::object()}, {"lexicon", lex}};
  for (auto k : kAllIntentKinds) wrapper["intents"][std::string(to_string(k))] = {"x"};
  return TemplatePack::from_json(wrapper).lexicon;
}

json TemplatePack::to_json() const {
  json intents_doc = json::object();
  for (auto& [k, templates] : intents) intents_doc[std::string(to_string(k))] = templates;
  return json{{"intents", intents_doc}, {"lexicon", lexicon_to_json(lexicon)}};
}

}  // namespace odcb
