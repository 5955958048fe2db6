// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/botgen/generate.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "lexicon_json.hpp"
#include "odcb/botgen/template_syntax.hpp"
#include "odcb/error.hpp"
#include "odcb/model/document.hpp"
#include "odcb/model/text.hpp"
#include "odcb/model/validate.hpp"

namespace odcb {

using json = nlohmann::ordered_json;

StateMachine build_state_machine(const DataModel& model) {
  using S = StateId;
  using K = IntentKind;
  namespace a = actions;
  const bool filterable = !field_domain(K::AddFilter, model).empty();
  const S guided_target = filterable ? S::AwaitingFilterField : S::AwaitingFieldSelection;

  StateMachine sm;
  auto add = [&](S from, K intent, std::string_view action, S to) {
    sm.transitions.push_back({from, intent, std::string(action), to});
  };
  add(S::Idle, K::DirectSearch, a::kStartDirect, S::AwaitingFieldSelection);
  add(S::Idle, K::GuidedSearch, a::kStartGuided, guided_target);
  if (filterable) add(S::AwaitingFilterField, K::AddFilter, a::kChooseFilterField, S::AwaitingOperator);
  add(S::AwaitingFilterField, K::EndFilter, a::kEndFilters, S::AwaitingFieldSelection);
  add(S::AwaitingOperator, K::ChooseOperator, a::kChooseOperator, S::AwaitingValue);
  add(S::AwaitingValue, K::ProvideValue, a::kSetFilterValue, S::AwaitingFilterField);
  add(S::AwaitingFieldSelection, K::SelectField, a::kSelectField, S::AwaitingFieldSelection);
  add(S::AwaitingFieldSelection, K::ShowResult, a::kExecuteQuery, S::ShowingResults);
  add(S::ShowingResults, K::AddPostFilter, a::kPostFilter, S::ShowingResults);
  add(S::ShowingResults, K::SortOrderBy, a::kSort, S::ShowingResults);
  add(S::ShowingResults, K::NextPage, a::kNextPage, S::ShowingResults);
  add(S::ShowingResults, K::AddPostFunction, a::kAggregate, S::ShowingResults);
  add(S::ShowingResults, K::DirectSearch, a::kStartDirect, S::AwaitingFieldSelection);
  add(S::ShowingResults, K::GuidedSearch, a::kStartGuided, guided_target);
  return sm;
}

BotDefinition generate_bot(const DataModel& model, const TemplatePack& pack, int page_size) {
  auto report = validate(model);
  if (!report.empty()) throw Error(ErrorCode::InvariantViolation, "model does not validate:\n" + report.describe());
  if (page_size <= 0) throw Error(ErrorCode::InvariantViolation, "page size must be positive");
  const auto* core = model.core_concept();
  if (!core->bot.toExpose) throw Error(ErrorCode::NoExposedConcept, "core concept '" + core->name + "' is hidden");
  if (exposed_leaves(model).empty())
    throw Error(ErrorCode::NoExposedProperties, "core concept '" + core->name + "' exposes no property");

  BotDefinition bot;
  bot.model = exposed_projection(model);
  bot.pageSize = page_size;
  bot.lexicon = pack.lexicon;
  bot.stateMachine = build_state_machine(bot.model);
  const auto concept_phrases = element_phrases(core->bot);

  for (auto kind : kAllIntentKinds) {
    auto it = pack.intents.find(kind);
    if (it == pack.intents.end() || it->second.empty())
      throw Error(ErrorCode::MalformedDocument, "template pack lacks intent " + std::string(to_string(kind)));

    IntentTemplate intent;
    intent.kind = kind;
    std::unordered_set<std::string> seen;
    for (auto& tmpl : it->second) {
      auto words = parse_template(tmpl);
      const bool has_concept = std::any_of(words.begin(), words.end(),
                                           [](const TemplateWord& w) { return w.slot && w.text == kConceptMarker; });
      std::vector<std::string> variants;
      for (size_t v = 0; v < (has_concept ? concept_phrases.size() : 1); ++v) {
        std::vector<std::string> out;
        for (auto& w : words) {
          if (!w.slot) out.push_back(w.text);
          else if (w.text == kConceptMarker) out.push_back(concept_phrases[v]);
          else out.push_back("{" + w.text + "}");
        }
        variants.push_back(text::join(out, " "));
      }
      for (auto& v : variants)
        if (seen.insert(v).second) intent.trainingTemplates.push_back(v);
      for (auto& w : words) {
        if (!w.slot || w.text == kConceptMarker) continue;
        auto fill = fill_for_slot(w.text);
        if (!fill) throw Error(ErrorCode::MalformedDocument, "unknown slot {" + w.text + "}");
        bool known = std::any_of(intent.slots.begin(), intent.slots.end(), [&](const SlotSpec& s) { return s.name == w.text; });
        if (!known) intent.slots.push_back({w.text, *fill});
      }
    }
    for (auto s : kAllStates)
      if (bot.stateMachine.find(s, kind)) intent.allowedStates.push_back(s);
    bot.intents.push_back(std::move(intent));
  }
  return bot;
}

namespace {

std::vector<std::string> surfaces_for_ops(const Lexicon& lex, const std::vector<Operator>& ops) {
  std::vector<std::string> out;
  for (auto op : ops)
    if (auto it = lex.operators.find(op); it != lex.operators.end())
      out.insert(out.end(), it->second.begin(), it->second.end());
  return out;
}

template <class E>
std::vector<std::string> all_surfaces(const std::map<E, std::vector<std::string>>& m) {
  std::vector<std::string> out;
  for (auto& [k, forms] : m) out.insert(out.end(), forms.begin(), forms.end());
  return out;
}

}  // namespace

std::vector<std::string> expand_templates(const BotDefinition& bot, IntentKind kind) {
  const auto* intent = bot.intent(kind);
  if (!intent) return {};
  const auto domain = field_domain(kind, bot.model);

  // Operators offered when the template has no field to type them by.
  std::vector<Operator> untyped_ops;
  for (auto& path : field_domain(IntentKind::AddFilter, bot.model))
    for (auto op : operators_for(find_property(bot.model, path)->semanticType))
      if (std::find(untyped_ops.begin(), untyped_ops.end(), op) == untyped_ops.end()) untyped_ops.push_back(op);
  std::sort(untyped_ops.begin(), untyped_ops.end());

  std::vector<std::string> sentences;
  std::unordered_set<std::string> seen;

  for (auto& tmpl : intent->trainingTemplates) {
    const auto words = parse_template(tmpl);
    const bool has_field = std::any_of(words.begin(), words.end(), [](auto& w) { return w.slot && w.text == "field"; });

    struct FieldChoice {
      std::string phrase;
      std::vector<Operator> ops;
    };
    std::vector<FieldChoice> fields;
    if (has_field) {
      for (auto& path : domain) {
        const auto* p = find_property(bot.model, path);
        for (auto& phrase : element_phrases(p->bot)) fields.push_back({phrase, operators_for(p->semanticType)});
      }
    } else {
      fields.push_back({"", untyped_ops});
    }

    for (auto& field : fields) {
      // Per-word alternatives, then a cartesian walk.
      std::vector<std::vector<std::string>> options;
      for (auto& w : words) {
        if (!w.slot) options.push_back({w.text});
        else if (w.text == "field") options.push_back({field.phrase});
        else if (w.text == "operator") options.push_back(surfaces_for_ops(bot.lexicon, field.ops));
        else if (w.text == "direction") options.push_back(all_surfaces(bot.lexicon.directions));
        else if (w.text == "function") options.push_back(all_surfaces(bot.lexicon.functions));
        else options.push_back({"{" + w.text + "}"});
      }
      if (std::any_of(options.begin(), options.end(), [](auto& o) { return o.empty(); })) continue;

      std::vector<size_t> idx(options.size(), 0);
      for (bool more = true; more;) {
        std::vector<std::string> parts;
        for (size_t i = 0; i < options.size(); ++i) parts.push_back(options[i][idx[i]]);
        auto sentence = text::to_lower(text::join(parts, " "));
        if (seen.insert(sentence).second) sentences.push_back(std::move(sentence));
        more = false;
        for (size_t i = options.size(); i-- > 0;) {
          if (++idx[i] < options[i].size()) {
            more = true;
            break;
          }
          idx[i] = 0;
        }
      }
    }
  }
  return sentences;
}

std::vector<std::string> expand_templates(IntentKind kind, const DataModel& model) {
  return expand_templates(generate_bot(model), kind);
}

std::vector<std::string> check_bot(const BotDefinition& bot) {
  std::vector<std::string> problems;
  auto report = validate(bot.model);
  if (!report.empty()) problems.push_back("embedded model does not validate");
  if (bot.pageSize <= 0) problems.push_back("pageSize must be positive");

  for (auto kind : kAllIntentKinds) {
    auto n = std::count_if(bot.intents.begin(), bot.intents.end(), [&](auto& i) { return i.kind == kind; });
    if (n != 1) problems.push_back("intent " + std::string(to_string(kind)) + " appears " + std::to_string(n) + " times");
  }
  if (bot.intents.size() != kAllIntentKinds.size()) problems.push_back("unexpected number of intents");

  const auto& sm = bot.stateMachine;
  for (auto& intent : bot.intents) {
    const std::string name(to_string(intent.kind));
    if (intent.trainingTemplates.empty()) problems.push_back(name + " has no training templates");
    std::set<std::string> slot_names;
    for (auto& s : intent.slots)
      if (!slot_names.insert(s.name).second) problems.push_back(name + " declares slot " + s.name + " twice");
    for (auto& t : intent.trainingTemplates)
      for (auto& w : parse_template(t))
        if (w.slot && !slot_names.count(w.text)) problems.push_back(name + " uses undeclared slot {" + w.text + "}");
    for (auto s : kAllStates) {
      bool allowed = intent.allowed_in(s);
      bool has_transition = sm.find(s, intent.kind) != nullptr;
      if (allowed != has_transition)
        problems.push_back(name + " allowedStates disagrees with the state machine at " + std::string(to_string(s)));
    }
  }

  if (sm.initial != StateId::Idle) problems.push_back("initial state is not Idle");
  if (sm.states != std::vector<StateId>(kAllStates.begin(), kAllStates.end())) problems.push_back("unexpected state set");
  std::set<std::pair<StateId, IntentKind>> keys;
  for (auto& t : sm.transitions)
    if (!keys.insert({t.from, t.intent}).second)
      problems.push_back("nondeterministic transition from " + std::string(to_string(t.from)) + " on " +
                         std::string(to_string(t.intent)));

  // Backward search from ShowingResults.
  std::set<StateId> reaches{StateId::ShowingResults};
  for (bool grew = true; grew;) {
    grew = false;
    for (auto& t : sm.transitions)
      if (reaches.count(t.to) && reaches.insert(t.from).second) grew = true;
  }
  for (auto s : sm.states)
    if (!reaches.count(s)) problems.push_back(std::string(to_string(s)) + " cannot reach ShowingResults");

  for (auto k : {IntentKind::AddPostFilter, IntentKind::SortOrderBy, IntentKind::NextPage, IntentKind::AddPostFunction,
                 IntentKind::DirectSearch, IntentKind::GuidedSearch})
    if (!sm.find(StateId::ShowingResults, k))
      problems.push_back("ShowingResults does not accept " + std::string(to_string(k)));
  return problems;
}

json bot_to_json(const BotDefinition& bot) {
  json intents = json::array();
  for (auto& i : bot.intents) {
    json slots = json::array();
    for (auto& s : i.slots) slots.push_back({{"name", s.name}, {"fills", std::string(to_string(s.fills))}});
    json states = json::array();
    for (auto s : i.allowedStates) states.push_back(std::string(to_string(s)));
    intents.push_back({{"kind", std::string(to_string(i.kind))},
                       {"trainingTemplates", i.trainingTemplates},
                       {"slots", slots},
                       {"allowedStates", states},
                       {"trainingSentences", expand_templates(bot, i.kind)}});
  }
  json states = json::array();
  for (auto s : bot.stateMachine.states) states.push_back(std::string(to_string(s)));
  json transitions = json::array();
  for (auto& t : bot.stateMachine.transitions)
    transitions.push_back({{"from", std::string(to_string(t.from))},
                           {"intent", std::string(to_string(t.intent))},
                           {"action", t.action},
                           {"to", std::string(to_string(t.to))}});
  return json{
      {"version", "1"},
      {"pageSize", bot.pageSize},
      {"model", persist(bot.model)},
      {"lexicon", lexicon_to_json(bot.lexicon)},
      {"intents", intents},
      {"stateMachine",
       {{"states", states}, {"initial", std::string(to_string(bot.stateMachine.initial))}, {"transitions", transitions}}},
  };
}

namespace {

[[noreturn]] void bad_bot(const std::string& what) { throw Error(ErrorCode::MalformedDocument, "bot document: " + what); }

StateId state_at(const json& v) {
  if (!v.is_string()) bad_bot("state must be a string");
  auto s = state_from_string(v.get<std::string>());
  if (!s) bad_bot("unknown state '" + v.get<std::string>() + "'");
  return *s;
}

IntentKind kind_at(const json& v) {
  if (!v.is_string()) bad_bot("intent kind must be a string");
  auto k = intent_kind_from_string(v.get<std::string>());
  if (!k) bad_bot("unknown intent kind '" + v.get<std::string>() + "'");
  return *k;
}

}  // namespace

BotDefinition bot_from_json(const json& doc) {
  if (!doc.is_object()) bad_bot("expected an object");
  if (doc.value("version", "") != "1") throw Error(ErrorCode::SchemaVersionMismatch, "bot document version must be \"1\"");
  try {
    BotDefinition bot;
    bot.pageSize = doc.at("pageSize").get<int>();
    bot.model = restore(doc.at("model"));
    bot.lexicon = lexicon_from_json(doc.at("lexicon"));
    for (auto& i : doc.at("intents")) {
      IntentTemplate t;
      t.kind = kind_at(i.at("kind"));
      t.trainingTemplates = i.at("trainingTemplates").get<std::vector<std::string>>();
      for (auto& s : i.at("slots")) {
        auto fill = slot_fill_from_string(s.at("fills").get<std::string>());
        if (!fill) bad_bot("unknown slot fill");
        t.slots.push_back({s.at("name").get<std::string>(), *fill});
      }
      for (auto& s : i.at("allowedStates")) t.allowedStates.push_back(state_at(s));
      bot.intents.push_back(std::move(t));
    }
    const auto& sm = doc.at("stateMachine");
    bot.stateMachine.states.clear();
    for (auto& s : sm.at("states")) bot.stateMachine.states.push_back(state_at(s));
    bot.stateMachine.initial = state_at(sm.at("initial"));
    for (auto& t : sm.at("transitions"))
      bot.stateMachine.transitions.push_back(
          {state_at(t.at("from")), kind_at(t.at("intent")), t.at("action").get<std::string>(), state_at(t.at("to"))});
    return bot;
  } catch (const json::exception& e) {
    bad_bot(e.what());
  }
}

}  // namespace odcb
