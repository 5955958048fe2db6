// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any fails. Runs offline against the bundled fixtures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "odcb/botgen/generate.hpp"
#include "odcb/error.hpp"
#include "odcb/importers/importers.hpp"
#include "odcb/model/text.hpp"
#include "odcb/nlu/matcher.hpp"
#include "odcb/refine/refine.hpp"
#include "odcb/runtime/engine.hpp"
#include "odcb/runtime/mock_api.hpp"
#include "odcb/runtime/post_ops.hpp"
#include "odcb/service/chat_service.hpp"
#include "support/fixtures.hpp"
#include "support/soql_goldens.hpp"

using namespace odcb;
using json = nlohmann::ordered_json;

namespace {

constexpr double kImportBudgetSeconds = 1.0;
constexpr int kPostOpRounds = 100;
constexpr std::size_t kMaxRows = 1000;
constexpr double kAverageTolerance = 1e-9;
constexpr int kPaginationRows = 25;
constexpr int kPageSize = 10;

// Collects failure details for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

void quiet(std::string_view) {}

// ---- import fidelity --------------------------------------------------------

Check import_fidelity() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  auto docs = read_fixture_documents(ApiType::Socrata, testing::fixtures_dir(), testing::kAirQualityHost,
                                     testing::kAirQualityId);
  DataModel m = ImporterRegistry::with_builtins().run(ApiType::Socrata, docs);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const auto& columns = docs.documents.at("views").at("columns");
  c.expect(all_leaves(m).size() == columns.size(),
           "leaf count " + std::to_string(all_leaves(m).size()) + " != columns " + std::to_string(columns.size()));
  auto typed = [&](const char* name, SemanticType t) {
    const PropertyDef* p = m.core_concept() ? m.core_concept()->find_property(name) : nullptr;
    c.expect(p && p->semanticType == t, std::string(name) + " missing or not " + std::string(to_string(t)));
  };
  typed("municipality", SemanticType::Text);
  typed("magnitude", SemanticType::Number);
  typed("date", SemanticType::DateTime);
  c.expect(seconds < kImportBudgetSeconds, "import took " + std::to_string(seconds) + " s");
  return c;
}

// ---- intent completeness ----------------------------------------------------

struct Example {
  IntentKind kind;
  StateId state;
  const char* sentence;
};

const std::vector<Example>& examples() {
  static const std::vector<Example> kExamples{
      {IntentKind::DirectSearch, StateId::Idle,
       "show me all the air quality data with municipality equals to \"Barcelona\""},
      {IntentKind::GuidedSearch, StateId::Idle, "show me the list of air quality data"},
      {IntentKind::AddFilter, StateId::AwaitingFilterField, "date"},
      {IntentKind::ChooseOperator, StateId::AwaitingOperator, "equals"},
      {IntentKind::ProvideValue, StateId::AwaitingValue, "yesterday"},
      {IntentKind::EndFilter, StateId::AwaitingFilterField, "I don't want to add filters"},
      {IntentKind::SelectField, StateId::AwaitingFieldSelection, "municipality"},
      {IntentKind::ShowResult, StateId::AwaitingFieldSelection, "I don't want to add fields"},
      {IntentKind::AddPostFilter, StateId::ShowingResults, "add filter magnitude less than \"14\""},
      {IntentKind::SortOrderBy, StateId::ShowingResults, "sort by name ASC"},
      {IntentKind::SortOrderBy, StateId::ShowingResults, "order by date ASC"},
      {IntentKind::NextPage, StateId::ShowingResults, "show me next page"},
      {IntentKind::AddPostFunction, StateId::ShowingResults, "calculate average of magnitude"},
  };
  return kExamples;
}

Check intent_completeness() {
  Check c;
  const BotDefinition bot = testing::air_quality_bot();
  std::set<IntentKind> kinds;
  for (auto& i : bot.intents) kinds.insert(i.kind);
  c.expect(bot.intents.size() == 12 && kinds.size() == 12, "bot has " + std::to_string(kinds.size()) + " intent kinds");

  const Matcher matcher(bot);
  int matched = 0;
  for (auto& ex : examples()) {
    if (!bot.intent(ex.kind) || !bot.intent(ex.kind)->allowed_in(ex.state)) {
      c.expect(false, std::string(to_string(ex.kind)) + " not in scope in " + std::string(to_string(ex.state)));
      continue;
    }
    try {
      auto m = matcher.match(ex.state, ex.sentence);
      if (m.kind == ex.kind) ++matched;
      else c.expect(false, std::string("\"") + ex.sentence + "\" matched " + std::string(to_string(m.kind)));
    } catch (const Error& e) {
      c.expect(false, std::string("\"") + ex.sentence + "\": " + e.what());
    }
  }
  c.expect(matched == 13, std::to_string(matched) + "/13 sentences matched");
  return c;
}

// ---- golden dialogue --------------------------------------------------------

const std::vector<std::string>& golden_dialogue() {
  static const std::vector<std::string> kTurns{
      "show me the list of air quality data", "date", "equals", "yesterday", "I don't want to add filters",
      "municipality", "magnitude", "I don't want to add fields"};
  return kTurns;
}

Check golden_dialogue_check() {
  Check c;
  MockApi api(testing::fixtures_dir());
  MockApiServer server(api);
  server.start();
  HttpTransport http(server.origin());
  ChatEngine engine(testing::air_quality_bot(), http, quiet);

  Session s = engine.create_session();
  BotResponse last;
  for (auto& turn : golden_dialogue()) {
    auto t = engine.handle_message(s, turn, testing::kToday);
    s = std::move(t.session);
    last = std::move(t.response);
  }
  c.expect(s.state == StateId::ShowingResults, "ended in " + std::string(to_string(s.state)));
  c.expect(last.table && last.table->headers == std::vector<std::string>{"municipality", "magnitude"},
           "table headers differ");
  c.expect(last.table && !last.table->rows.empty(), "no rows rendered");

  const auto data = api.data_requests();
  c.expect(data.size() == 1, std::to_string(data.size()) + " data requests");
  if (data.size() == 1) {
    std::string where;
    for (auto& [k, v] : parse_query(data[0]))
      if (k == "$where") where = v;
    const auto yesterday = std::chrono::sys_days(testing::kToday) - std::chrono::days(1);
    const std::string expected = "date = '" + iso_date(std::chrono::year_month_day(yesterday)) + "T00:00:00.000'";
    c.expect(where == expected, "$where was \"" + where + "\"");
  }
  server.stop();
  return c;
}

// ---- query goldens ----------------------------------------------------------

Check query_goldens() {
  Check c;
  const DataModel model = testing::air_quality_model();
  const auto goldens = testing::soql_goldens();
  c.expect(goldens.size() == 10, std::to_string(goldens.size()) + " goldens");
  for (auto& g : goldens) {
    try {
      auto req = build_request(model.binding, g.spec, g.page, model);
      c.expect(req.url == g.url, g.name + ": got " + req.url);
    } catch (const Error& e) {
      c.expect(false, g.name + ": " + e.what());
    }
  }
  return c;
}

// ---- post-processing oracle -------------------------------------------------

Check post_processing_oracle() {
  Check c;
  std::mt19937_64 rng(0x0dcb);
  const Operator ops[] = {Operator::Equals, Operator::NotEquals, Operator::LessThan, Operator::GreaterThan};

  for (int round = 0; round < kPostOpRounds; ++round) {
    const std::size_t n = rng() % (kMaxRows + 1);
    // A small value pool forces duplicates, so stability is observable.
    std::vector<double> pool;
    for (int i = 0; i < 20; ++i) pool.push_back(std::uniform_real_distribution<double>(-1000, 1000)(rng));
    std::vector<Row> rows;
    for (std::size_t i = 0; i < n; ++i) {
      Row r{{"tag", i}};
      if (rng() % 50 != 0) r["x"] = pool[rng() % pool.size()];
      rows.push_back(std::move(r));
    }
    const Operator op = ops[rng() % 4];
    const double cut = pool[rng() % pool.size()];
    const SortDirection dir = rng() % 2 ? SortDirection::Asc : SortDirection::Desc;

    // Oracle: plain loops, insertion sort (stable by construction).
    std::vector<std::pair<double, std::size_t>> kept;
    for (auto& r : rows) {
      if (!r.contains("x")) continue;
      const double x = r["x"].get<double>();
      bool ok = op == Operator::Equals ? x == cut : op == Operator::NotEquals ? x != cut
                                                  : op == Operator::LessThan  ? x < cut
                                                                              : x > cut;
      if (ok) kept.emplace_back(x, r["tag"].get<std::size_t>());
    }
    for (std::size_t i = 1; i < kept.size(); ++i) {
      for (std::size_t j = i; j > 0; --j) {
        bool before = dir == SortDirection::Asc ? kept[j].first < kept[j - 1].first : kept[j].first > kept[j - 1].first;
        if (!before) break;
        std::swap(kept[j], kept[j - 1]);
      }
    }
    long double sum = 0;
    double lo = 0, hi = 0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      sum += kept[i].first;
      lo = i == 0 ? kept[i].first : std::min(lo, kept[i].first);
      hi = i == 0 ? kept[i].first : std::max(hi, kept[i].first);
    }

    const std::vector<PostFilter> filters{{"x", SemanticType::Number, op, value::Number{cut}}};
    const PostSort sort{"x", SemanticType::Number, dir};
    const std::string where = "round " + std::to_string(round) + ": ";

    auto sorted = apply_post_ops(rows, filters, sort, std::nullopt);
    bool same = sorted.rows.size() == kept.size();
    for (std::size_t i = 0; same && i < kept.size(); ++i)
      same = sorted.rows[i]["tag"].get<std::size_t>() == kept[i].second;
    c.expect(same, where + "filtered/sorted rows differ from the oracle");

    for (auto fn : {AggFunction::Average, AggFunction::Minimum, AggFunction::Maximum}) {
      auto r = apply_post_ops(rows, filters, std::nullopt, PostAggregate{"x", fn});
      if (kept.empty()) {
        c.expect(!r.scalar, where + "aggregate over nothing returned a value");
        continue;
      }
      if (!r.scalar) {
        c.expect(false, where + "aggregate missing");
        continue;
      }
      if (fn == AggFunction::Average) {
        const double expected = static_cast<double>(sum / static_cast<long double>(kept.size()));
        c.expect(std::fabs(*r.scalar - expected) <= kAverageTolerance, where + "average off by " +
                                                                            std::to_string(std::fabs(*r.scalar - expected)));
      } else {
        c.expect(*r.scalar == (fn == AggFunction::Minimum ? lo : hi), where + "min/max differs");
      }
    }
  }
  return c;
}

// ---- pagination -------------------------------------------------------------

Check pagination_completeness() {
  Check c;
  MockApi api;
  std::vector<Row> rows;
  for (int i = 0; i < kPaginationRows; ++i)
    rows.push_back({{"municipality", "Town " + std::to_string(i)}, {"magnitude", std::to_string(i)}});
  api.add_socrata_dataset("page-test", rows);
  MockTransport transport(api);

  DataModel model = testing::air_quality_model();
  model.binding.resourcePath = "page-test";
  ChatEngine engine(generate_bot(model, TemplatePack::defaults(), kPageSize), transport, quiet);

  Session s = engine.create_session();
  BotResponse last;
  auto say = [&](const std::string& text) {
    auto t = engine.handle_message(s, text, testing::kToday);
    s = std::move(t.session);
    last = std::move(t.response);
  };
  for (auto* t : {"show me the list of air quality data", "no more filters", "municipality", "no more fields"}) say(t);

  std::vector<std::size_t> sizes;
  std::vector<std::string> seen;
  auto collect = [&] {
    sizes.push_back(last.table ? last.table->rows.size() : 0);
    if (last.table)
      for (auto& r : last.table->rows) seen.push_back(r.at(0));
  };
  collect();
  for (int guard = 0; s.morePages && guard < 10; ++guard) {
    say("show me next page");
    collect();
  }
  c.expect(sizes == std::vector<std::size_t>{10, 10, 5}, "page sizes differ");
  std::set<std::string> unique(seen.begin(), seen.end());
  c.expect(seen.size() == static_cast<std::size_t>(kPaginationRows) && unique.size() == seen.size(),
           "union has " + std::to_string(unique.size()) + " distinct of " + std::to_string(seen.size()));
  for (auto& r : rows) c.expect(unique.count(r["municipality"].get<std::string>()) == 1, "row missing from pages");
  return c;
}

// ---- hidden-element exclusion ------------------------------------------------

bool mentions_latitude(const std::string& s) { return text::to_lower(s).find("latitude") != std::string::npos; }

Check hidden_element_exclusion() {
  Check c;
  DataModel model = set_annotation(testing::air_quality_model(), ElementPath::parse("AirQualityData.latitude"),
                                   change::ToExpose{false});
  BotDefinition bot = generate_bot(model);
  c.expect(!mentions_latitude(bot_to_json(bot).dump()), "bot.json mentions latitude");
  for (auto kind : kAllIntentKinds)
    for (auto& s : expand_templates(bot, kind)) c.expect(!mentions_latitude(s), "training sentence: " + s);

  MockApi api(testing::fixtures_dir());
  MockTransport transport(api);
  ChatEngine engine(bot, transport, quiet);
  Session s = engine.create_session();
  c.expect(!mentions_latitude(response_to_json(engine.welcome(s)).dump()), "welcome mentions latitude");
  std::vector<std::string> turns = golden_dialogue();
  turns.insert(turns.end(), {"show me next page", "show me the list of air quality data", "no more filters",
                             "no more fields"});
  for (auto& turn : turns) {
    auto t = engine.handle_message(s, turn, testing::kToday);
    s = std::move(t.session);
    c.expect(!mentions_latitude(response_to_json(t.response).dump()), "response to \"" + turn + "\"");
  }
  c.expect(s.state == StateId::ShowingResults, "dialogue did not reach results");
  return c;
}

// ---- synonym resolution -----------------------------------------------------

Check synonym_resolution() {
  Check c;
  MockApi api(testing::fixtures_dir());
  MockTransport transport(api);
  ChatEngine engine(testing::air_quality_bot(), transport, quiet);

  std::vector<std::string> direct, guided;
  for (const char* word : {"municipality", "town", "city"}) {
    Session s = engine.create_session();
    auto t = engine.handle_message(
        s, std::string("show me all the air quality data with ") + word + " equals to \"Barcelona\"", testing::kToday);
    direct.push_back(t.session.spec.filters.empty() ? "<none>" : t.session.spec.filters[0].field.str());

    Session g = engine.create_session();
    for (const char* turn : {"show me the list of air quality data", word, "equals", "\"Barcelona\""})
      g = engine.handle_message(g, turn, testing::kToday).session;
    guided.push_back(g.spec.filters.empty() ? "<none>" : g.spec.filters[0].field.str());
  }
  for (auto* v : {&direct, &guided})
    for (auto& f : *v) c.expect(f == "AirQualityData.municipality", "resolved to " + f);
  return c;
}

// ---- state-machine safety ---------------------------------------------------

Check state_machine_safety() {
  Check c;
  const BotDefinition bot = testing::air_quality_bot();
  const auto& sm = bot.stateMachine;

  std::set<std::pair<StateId, IntentKind>> keys;
  for (auto& t : sm.transitions)
    c.expect(keys.insert({t.from, t.intent}).second, "two transitions from " + std::string(to_string(t.from)) +
                                                          " on " + std::string(to_string(t.intent)));

  for (auto from : kAllStates) {
    std::set<StateId> seen{from};
    std::deque<StateId> queue{from};
    while (!queue.empty()) {
      StateId s = queue.front();
      queue.pop_front();
      for (auto& t : sm.transitions)
        if (t.from == s && seen.insert(t.to).second) queue.push_back(t.to);
    }
    c.expect(seen.count(StateId::ShowingResults) == 1,
             "ShowingResults unreachable from " + std::string(to_string(from)));
  }

  // Exhaustive walk of the running engine over an alphabet of every
  // example sentence plus noise; each distinct state is explored once.
  MockApi api(testing::fixtures_dir());
  MockTransport transport(api);
  ChatEngine engine(bot, transport, quiet);
  const Matcher matcher(bot);
  std::vector<std::string> alphabet;
  for (auto& ex : examples()) alphabet.push_back(ex.sentence);
  const std::vector<std::string> noise{"", "banana", "what is the weather like", "42", "latitude longitude"};
  alphabet.insert(alphabet.end(), noise.begin(), noise.end());

  std::map<StateId, Session> frontier_seen;
  std::deque<Session> queue{engine.create_session()};
  frontier_seen[StateId::Idle] = queue.front();
  int no_match_checks = 0;
  while (!queue.empty()) {
    Session s = queue.front();
    queue.pop_front();
    for (auto& utterance : alphabet) {
      bool no_match = false;
      try {
        matcher.match(s.state, utterance);
      } catch (const Error& e) {
        no_match = e.code() == ErrorCode::NoMatch;
      }
      auto turn = engine.handle_message(s, utterance, testing::kToday);
      // Same input, same outcome.
      auto again = engine.handle_message(s, utterance, testing::kToday);
      c.expect(again.session.state == turn.session.state, "nondeterministic turn on \"" + utterance + "\"");
      if (no_match) {
        ++no_match_checks;
        c.expect(turn.session.state == s.state && turn.session.spec == s.spec && turn.session.page == s.page &&
                     turn.session.pending == s.pending,
                 "NoMatch on \"" + utterance + "\" changed " + std::string(to_string(s.state)));
      } else {
        const Transition* t = sm.find(s.state, matcher.match(s.state, utterance).kind);
        c.expect(t != nullptr, "matched an intent with no transition");
      }
      if (!frontier_seen.count(turn.session.state)) {
        frontier_seen[turn.session.state] = turn.session;
        queue.push_back(turn.session);
      }
    }
  }
  c.expect(frontier_seen.size() == kAllStates.size(),
           "explored " + std::to_string(frontier_seen.size()) + " of " + std::to_string(kAllStates.size()) + " states");
  c.expect(no_match_checks > 0, "no NoMatch case exercised");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"import-fidelity", import_fidelity},
      {"intent-completeness", intent_completeness},
      {"golden-dialogue", golden_dialogue_check},
      {"query-goldens", query_goldens},
      {"post-processing-oracle", post_processing_oracle},
      {"pagination-completeness", pagination_completeness},
      {"hidden-element-exclusion", hidden_element_exclusion},
      {"synonym-resolution", synonym_resolution},
      {"state-machine-safety", state_machine_safety},
  };
  int failed = 0;
  for (auto& [name, run] : criteria) {
    Check result;
    try {
      result = run();
    } catch (const std::exception& e) {
      result.failures.push_back(std::string("threw: ") + e.what());
    }
    if (result.failures.empty()) {
      std::cout << "PASS " << name << "\n";
    } else {
      ++failed;
      std::cout << "FAIL " << name << ": " << result.failures.front();
      if (result.failures.size() > 1) std::cout << " (+" << result.failures.size() - 1 << " more)";
      std::cout << "\n";
    }
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
