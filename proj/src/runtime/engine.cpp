// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/runtime/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <random>

#include "odcb/botgen/generate.hpp"
#include "odcb/error.hpp"

namespace odcb {

namespace {

// A turn the user has to redo; its message is shown as is.
struct Rejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string new_session_id() {
  thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng()),
                static_cast<unsigned long long>(rng()));
  return buf;
}

template <class T>
const T* slot(const MatchedIntent& m, const std::string& name) {
  auto it = m.slots.find(name);
  return it == m.slots.end() ? nullptr : std::get_if<T>(&it->second);
}

std::vector<Row> rows_of(ApiType api, const nlohmann::ordered_json& body, std::optional<std::size_t>* total) {
  const nlohmann::ordered_json* list = &body;
  if (api == ApiType::CKAN) {
    if (!body.is_object() || !body.contains("result") || !body["result"].is_object())
      throw Error(ErrorCode::Transport, "datastore_search response without result");
    const auto& result = body["result"];
    if (total && result.contains("total") && result["total"].is_number_unsigned())
      *total = result["total"].get<std::size_t>();
    list = result.contains("records") ? &result["records"] : nullptr;
  }
  if (!list || !list->is_array()) throw Error(ErrorCode::Transport, "response carries no row list");
  std::vector<Row> rows;
  rows.reserve(list->size());
  for (auto& r : *list) rows.push_back(r);
  return rows;
}

}  // namespace

Logger stderr_logger() {
  return [](std::string_view line) { std::cerr << line << '\n'; };
}

ChatEngine::ChatEngine(BotDefinition bot, Transport& transport, Logger logger)
    : bot_(std::move(bot)), matcher_(bot_), transport_(transport), log_(std::move(logger)) {
  for (auto kind : kAllIntentKinds) {
    auto sentences = expand_templates(bot_, kind);
    if (!sentences.empty()) examples_[kind] = sentences.front();
  }
}

std::string ChatEngine::readable(const PropertyPath& path) const {
  const PropertyDef* p = find_property(bot_.model, path);
  return p ? p->bot.readableName : path.property;
}

std::string ChatEngine::operator_label(Operator op) const {
  auto it = bot_.lexicon.operators.find(op);
  if (it != bot_.lexicon.operators.end() && !it->second.empty()) return it->second.front();
  return std::string(to_string(op));
}

std::string ChatEngine::concept_phrase() const {
  const ConceptClass* core = bot_.model.core_concept();
  return core ? core->bot.readableName : bot_.model.name;
}

Session ChatEngine::create_session() const {
  Session s;
  s.id = new_session_id();
  s.state = bot_.stateMachine.initial;
  const ConceptClass* core = bot_.model.core_concept();
  s.spec.concept_name = core ? core->name : std::string();
  s.spec.select = exposed_leaves(bot_.model);
  s.spec.pageSize = bot_.pageSize;
  return s;
}

BotResponse ChatEngine::welcome(const Session& session) const {
  BotResponse r;
  r.messages.push_back("Hi! I can help you explore " + concept_phrase() + ".");
  if (auto it = examples_.find(IntentKind::GuidedSearch); it != examples_.end())
    r.messages.push_back("Try \"" + it->second + "\".");
  r.buttons = buttons_for(session);
  return r;
}

std::vector<std::string> ChatEngine::buttons_for(const Session& s) const {
  std::vector<std::string> out;
  auto add = [&](std::string label) {
    if (!label.empty() && std::find(out.begin(), out.end(), label) == out.end()) out.push_back(std::move(label));
  };
  switch (s.state) {
    case StateId::Idle:
      if (auto it = examples_.find(IntentKind::GuidedSearch); it != examples_.end()) add(it->second);
      break;
    case StateId::AwaitingFilterField:
      for (auto& p : field_domain(IntentKind::AddFilter, bot_.model)) add(readable(p));
      add(bot_.lexicon.endFiltersButton);
      break;
    case StateId::AwaitingOperator:
      if (s.pending.field)
        if (const PropertyDef* p = find_property(bot_.model, *s.pending.field))
          for (auto op : operators_for(p->semanticType)) add(operator_label(op));
      break;
    case StateId::AwaitingValue:
      if (s.pending.field) {
        const PropertyDef* p = find_property(bot_.model, *s.pending.field);
        if (p && p->semanticType == SemanticType::DateTime) {
          add("today");
          add("yesterday");
        } else if (p && p->semanticType == SemanticType::Boolean) {
          add("true");
          add("false");
        }
      }
      break;
    case StateId::AwaitingFieldSelection:
      for (auto& p : field_domain(IntentKind::SelectField, bot_.model))
        if (std::find(s.spec.select.begin(), s.spec.select.end(), p) == s.spec.select.end()) add(readable(p));
      add(bot_.lexicon.endFieldsButton);
      break;
    case StateId::ShowingResults:
      if (s.morePages) add(bot_.lexicon.nextPageButton);
      if (auto it = examples_.find(IntentKind::GuidedSearch); it != examples_.end()) add(it->second);
      break;
  }
  return out;
}

BotResponse ChatEngine::help(const Session& s, std::string_view lead) const {
  BotResponse r;
  r.messages.emplace_back(lead);
  std::string options;
  for (auto& intent : bot_.intents) {
    if (!intent.allowed_in(s.state)) continue;
    auto it = examples_.find(intent.kind);
    if (it == examples_.end()) continue;
    options += "\n- " + it->second;
  }
  if (!options.empty()) r.messages.push_back("You can say, for example:" + options);
  r.buttons = buttons_for(s);
  return r;
}

Turn ChatEngine::handle_message(const Session& session, std::string_view utterance,
                                std::chrono::year_month_day today) const {
  MatchedIntent m;
  try {
    m = matcher_.match(session.state, utterance);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoMatch) throw;
    return {session, help(session, "Sorry, I didn't understand that.")};
  }
  const Transition* t = bot_.stateMachine.find(session.state, m.kind);
  if (!t) return {session, help(session, "Sorry, I can't do that right now.")};

  Session next = session;
  BotResponse r;
  try {
    run_action(*t, m, next, r, today);
  } catch (const Rejected& e) {
    BotResponse again;
    again.messages.emplace_back(e.what());
    again.buttons = buttons_for(session);
    return {session, std::move(again)};
  } catch (const Error& e) {
    log_("session " + session.id + ": " + e.what());
    BotResponse sorry;
    sorry.messages.push_back("Sorry, I couldn't get the data right now. Please try again later.");
    sorry.buttons = buttons_for(session);
    return {session, std::move(sorry)};
  }
  next.state = t->to;
  r.buttons = buttons_for(next);
  return {std::move(next), std::move(r)};
}

Filter ChatEngine::make_filter(const Session& s, const PropertyPath& field, Operator op, const Value& raw,
                               std::chrono::year_month_day today) const {
  const PropertyDef* p = find_property(bot_.model, field);
  if (!p) throw Rejected("I don't know the field " + field.str() + ".");
  if (!operator_valid_for(op, p->semanticType)) {
    std::string valid;
    for (auto o : operators_for(p->semanticType)) valid += (valid.empty() ? "" : ", ") + operator_label(o);
    throw Rejected(p->bot.readableName + " can't be compared with \"" + operator_label(op) + "\"." +
                   (valid.empty() ? "" : " Try one of: " + valid + "."));
  }
  Value typed = raw;
  if (const auto* text = std::get_if<value::Text>(&raw)) {
    try {
      typed = parse_value(p->semanticType, text->original, today);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnparsableValue) throw;
      throw Rejected("Sorry, " + e.detail() + ".");
    }
  }
  Filter f{field, op, std::move(typed), FilterScope::Server};
  f.scope = filter_scope_for(bot_.model.binding.apiType, s.spec.filters, f, bot_.model);
  return f;
}

void ChatEngine::run_action(const Transition& t, const MatchedIntent& m, Session& s, BotResponse& r,
                            std::chrono::year_month_day today) const {
  const std::string& action = t.action;
  auto reset = [&] {
    Session fresh = create_session();
    fresh.id = s.id;
    s = std::move(fresh);
  };
  auto describe_filter = [&](const Filter& f) {
    return readable(f.field) + " " + operator_label(f.op) + " " + describe(f.value);
  };

  if (action == actions::kStartGuided) {
    reset();
    if (t.to == StateId::AwaitingFilterField) {
      r.messages.push_back("Let's look at " + concept_phrase() + ". Which field do you want to filter by?");
    } else {
      s.spec.select.clear();
      r.messages.push_back("Let's look at " + concept_phrase() + ". Which fields do you want to see?");
    }
  } else if (action == actions::kStartDirect) {
    const auto* field = slot<PropertyPath>(m, "field");
    const auto* op = slot<Operator>(m, "operator");
    auto value = m.slots.find("value");
    if (!field || !op || value == m.slots.end()) throw Rejected("Tell me a field, an operator and a value.");
    reset();
    Filter f = make_filter(s, *field, *op, value->second, today);
    s.spec.filters.push_back(f);
    s.spec.select.clear();
    r.messages.push_back("Looking for " + concept_phrase() + " with " + describe_filter(f) +
                         ". Which fields do you want to see?");
  } else if (action == actions::kChooseFilterField) {
    const auto* field = slot<PropertyPath>(m, "field");
    if (!field) throw Rejected("Which field do you want to filter by?");
    s.pending = {*field, std::nullopt};
    r.messages.push_back("How should " + readable(*field) + " be compared?");
  } else if (action == actions::kChooseOperator) {
    const auto* op = slot<Operator>(m, "operator");
    if (!op || !s.pending.field) throw Rejected("Choose how to compare the field.");
    const PropertyDef* p = find_property(bot_.model, *s.pending.field);
    if (!operator_valid_for(*op, p->semanticType)) {
      std::string valid;
      for (auto o : operators_for(p->semanticType)) valid += (valid.empty() ? "" : ", ") + operator_label(o);
      throw Rejected(p->bot.readableName + " can't be compared with \"" + operator_label(*op) + "\". Try one of: " +
                     valid + ".");
    }
    s.pending.op = *op;
    std::string prompt = "Which value for \"" + p->bot.readableName + " " + operator_label(*op) + "\"?";
    if (p->semanticType == SemanticType::DateTime) prompt += " (a date like 2020-06-15, today or yesterday)";
    r.messages.push_back(prompt);
  } else if (action == actions::kSetFilterValue) {
    auto value = m.slots.find("value");
    if (!s.pending.field || !s.pending.op || value == m.slots.end()) throw Rejected("Which value?");
    Filter f = make_filter(s, *s.pending.field, *s.pending.op, value->second, today);
    s.spec.filters.push_back(f);
    s.pending = {};
    r.messages.push_back("Filter added: " + describe_filter(f) + ". Pick another field to filter by, or say \"" +
                         bot_.lexicon.endFiltersButton + "\".");
  } else if (action == actions::kEndFilters) {
    s.pending = {};
    s.spec.select.clear();
    r.messages.push_back("Which fields do you want to see?");
  } else if (action == actions::kSelectField) {
    const auto* field = slot<PropertyPath>(m, "field");
    if (!field) throw Rejected("Which field?");
    if (std::find(s.spec.select.begin(), s.spec.select.end(), *field) == s.spec.select.end())
      s.spec.select.push_back(*field);
    r.messages.push_back("Added " + readable(*field) + ". Pick another field, or say \"" +
                         bot_.lexicon.endFieldsButton + "\".");
  } else if (action == actions::kExecuteQuery) {
    if (s.spec.select.empty()) s.spec.select = exposed_leaves(bot_.model);
    s.page = 0;
    execute(s, r);
  } else if (action == actions::kPostFilter) {
    const auto* field = slot<PropertyPath>(m, "field");
    const auto* op = slot<Operator>(m, "operator");
    auto value = m.slots.find("value");
    if (!field || !op || value == m.slots.end()) throw Rejected("Tell me a field, an operator and a value.");
    Filter f = make_filter(s, *field, *op, value->second, today);
    s.spec.filters.push_back(f);
    s.page = 0;
    r.messages.push_back("Filter added: " + describe_filter(f) + ".");
    execute(s, r);
  } else if (action == actions::kSort) {
    const auto* field = slot<PropertyPath>(m, "field");
    if (!field) throw Rejected("Which field should I sort by?");
    const auto* dir = slot<SortDirection>(m, "direction");
    s.spec.sort = SortSpec{*field, dir ? *dir : SortDirection::Asc};
    s.page = 0;
    r.messages.push_back("Sorted by " + readable(*field) +
                         (s.spec.sort->direction == SortDirection::Asc ? ", ascending." : ", descending."));
    execute(s, r);
  } else if (action == actions::kNextPage) {
    if (!s.morePages) throw Rejected("There are no more results.");
    ++s.page;
    execute(s, r);
  } else if (action == actions::kAggregate) {
    const auto* fn = slot<AggFunction>(m, "function");
    const auto* field = slot<PropertyPath>(m, "field");
    if (!fn || !field) throw Rejected("Tell me a function and a numeric field.");
    aggregate(s, Aggregation{*fn, *field}, r);
  } else {
    throw Error(ErrorCode::InvariantViolation, "unknown action " + action);
  }
}

std::vector<Row> ChatEngine::fetch(const QuerySpec& spec, int page, std::optional<std::size_t>* total) const {
  const auto req = build_request(bot_.model.binding, spec, page, bot_.model);
  log_("GET " + req.url);
  return rows_of(bot_.model.binding.apiType, transport_.get(req), total);
}

void ChatEngine::execute(Session& s, BotResponse& r) const {
  std::vector<PostFilter> post;
  for (auto& f : s.spec.filters) {
    if (f.scope != FilterScope::Post) continue;
    const PropertyDef* p = find_property(bot_.model, f.field);
    post.push_back({p->binding.fieldName, p->semanticType, f.op, f.value});
  }
  const bool client_sort = s.spec.sort && bot_.model.binding.apiType != ApiType::Socrata;
  std::optional<std::size_t> total;
  std::vector<Row> rows;

  if (post.empty() && !client_sort) {
    rows = fetch(s.spec, s.page, &total);
  } else {
    // Whole window fetched once, processed here, then paged locally.
    QuerySpec window = s.spec;
    window.pageSize = static_cast<int>(kClientWindow);
    window.sort.reset();
    std::optional<std::size_t> server_total;
    auto all = fetch(window, 0, &server_total);
    if (all.size() >= kClientWindow || (server_total && *server_total > all.size()))
      r.messages.push_back("Only the first " + std::to_string(all.size()) + " rows were processed.");
    std::optional<PostSort> sort;
    if (client_sort) {
      const PropertyDef* p = find_property(bot_.model, s.spec.sort->field);
      sort = PostSort{p->binding.fieldName, p->semanticType, s.spec.sort->direction};
    }
    auto processed = apply_post_ops(std::move(all), post, sort, std::nullopt);
    total = processed.rows.size();
    const std::size_t from = static_cast<std::size_t>(s.page) * s.spec.pageSize;
    for (std::size_t i = from; i < processed.rows.size() && i < from + s.spec.pageSize; ++i)
      rows.push_back(std::move(processed.rows[i]));
  }

  BotResponse page = render(bot_.model, rows, s.spec.select, s.page, s.spec.pageSize, total);
  for (auto& msg : page.messages) r.messages.push_back(std::move(msg));
  r.table = std::move(page.table);
  s.morePages = total ? static_cast<std::size_t>(s.page + 1) * s.spec.pageSize < *total
                      : static_cast<int>(rows.size()) >= s.spec.pageSize;
  s.lastRows = std::move(rows);
}

void ChatEngine::aggregate(const Session& s, const Aggregation& agg, BotResponse& r) const {
  const PropertyDef* p = find_property(bot_.model, agg.field);
  if (!p || p->semanticType != SemanticType::Number)
    throw Rejected("I can only calculate " + std::string(to_string(agg.function)) + " over numeric fields.");
  std::optional<double> result;
  std::vector<PostFilter> post;
  for (auto& f : s.spec.filters) {
    if (f.scope != FilterScope::Post) continue;
    const PropertyDef* fp = find_property(bot_.model, f.field);
    post.push_back({fp->binding.fieldName, fp->semanticType, f.op, f.value});
  }

  if (bot_.model.binding.apiType == ApiType::Socrata && post.empty()) {
    QuerySpec q = s.spec;
    q.aggregation = agg;
    auto rows = fetch(q, 0, nullptr);
    if (!rows.empty() && rows.front().is_object() && !rows.front().empty()) {
      const auto& cell = rows.front().begin().value();
      Row probe = {{"v", cell}};
      if (auto v = typed_cell(probe, "v", SemanticType::Number)) result = std::get<value::Number>(*v).value;
    }
  } else {
    QuerySpec window = s.spec;
    window.pageSize = static_cast<int>(kClientWindow);
    window.sort.reset();
    std::optional<std::size_t> server_total;
    auto all = fetch(window, 0, &server_total);
    if (all.size() >= kClientWindow || (server_total && *server_total > all.size()))
      r.messages.push_back("Only the first " + std::to_string(all.size()) + " rows were used.");
    result = apply_post_ops(std::move(all), post, std::nullopt,
                            PostAggregate{p->binding.fieldName, agg.function})
                 .scalar;
  }
  if (!result) {
    r.messages.push_back("There are no " + p->bot.readableName + " values to calculate with.");
    return;
  }
  r.messages.push_back("The " + std::string(to_string(agg.function)) + " of " + p->bot.readableName + " is " +
                       format_number(*result) + ".");
}

}  // namespace odcb
