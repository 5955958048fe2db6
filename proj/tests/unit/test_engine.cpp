// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include <doctest.h>

#include <algorithm>

#include "odcb/botgen/generate.hpp"
#include "odcb/error.hpp"
#include "odcb/refine/refine.hpp"
#include "odcb/runtime/engine.hpp"
#include "odcb/runtime/mock_api.hpp"
#include "support/fixtures.hpp"

using namespace odcb;

namespace {

void quiet(std::string_view) {}

struct Harness {
  MockApi api{testing::fixtures_dir()};
  MockTransport transport{api};
  ChatEngine engine;
  Session session;
  BotResponse last;

  explicit Harness(BotDefinition bot) : engine(std::move(bot), transport, quiet), session(engine.create_session()) {}
  Harness() : Harness(testing::air_quality_bot()) {}

  const BotResponse& say(std::string_view text) {
    auto turn = engine.handle_message(session, text, testing::kToday);
    session = std::move(turn.session);
    last = std::move(turn.response);
    return last;
  }

  std::string all_text() const {
    std::string s;
    for (auto& m : last.messages) s += m + "\n";
    return s;
  }
};

// Transport that always fails.
struct DownTransport : Transport {
  int calls = 0;
  nlohmann::ordered_json get(const HttpRequestSpec&) override {
    ++calls;
    throw Error(ErrorCode::Transport, "connection refused");
  }
};

bool has_button(const BotResponse& r, const std::string& label) {
  return std::find(r.buttons.begin(), r.buttons.end(), label) != r.buttons.end();
}

void run_guided_dialogue(Harness& h) {
  h.say("show me the list of air quality data");
  h.say("date");
  h.say("equals");
  h.say("yesterday");
  h.say("I don't want to add filters");
  h.say("municipality");
  h.say("magnitude");
  h.say("I don't want to add fields");
}

}  // namespace

TEST_CASE("sessions start idle with distinct ids") {
  Harness h;
  CHECK(h.session.state == StateId::Idle);
  CHECK(h.session.id.size() == 32);
  CHECK(h.engine.create_session().id != h.session.id);
  auto w = h.engine.welcome(h.session);
  CHECK(w.messages.front() == "Hi! I can help you explore air quality data.");
  CHECK_FALSE(w.buttons.empty());
}

TEST_CASE("guided dialogue") {
  Harness h;
  h.say("show me the list of air quality data");
  CHECK(h.session.state == StateId::AwaitingFilterField);
  CHECK(has_button(h.last, "municipality"));
  CHECK(has_button(h.last, "No more filters"));

  h.say("date");
  CHECK(h.session.state == StateId::AwaitingOperator);
  REQUIRE(h.session.pending.field);
  CHECK(h.session.pending.field->str() == "AirQualityData.date");
  CHECK(has_button(h.last, "less than"));

  h.say("equals");
  CHECK(h.session.state == StateId::AwaitingValue);
  CHECK(has_button(h.last, "yesterday"));

  h.say("yesterday");
  CHECK(h.session.state == StateId::AwaitingFilterField);
  REQUIRE(h.session.spec.filters.size() == 1);
  const Filter& f = h.session.spec.filters[0];
  CHECK(f.field.str() == "AirQualityData.date");
  CHECK(f.op == Operator::Equals);
  CHECK(std::get<value::Date>(f.value).value == std::chrono::year{2020} / 6 / 15);
  CHECK(f.scope == FilterScope::Server);
  CHECK(h.all_text().find("date equals 2020-06-15") != std::string::npos);

  h.say("I don't want to add filters");
  CHECK(h.session.state == StateId::AwaitingFieldSelection);
  h.say("municipality");
  h.say("magnitude");
  CHECK(h.session.spec.select.size() == 2);
  CHECK_FALSE(has_button(h.last, "municipality"));
  CHECK(h.api.data_requests().empty());

  h.say("I don't want to add fields");
  CHECK(h.session.state == StateId::ShowingResults);
  auto data = h.api.data_requests();
  REQUIRE(data.size() == 1);
  CHECK(data[0] ==
        "/resource/uy6k-2s8r.json?$select=municipality,magnitude&$where=date%20%3D%20%272020-06-15T00%3A00%3A00.000%27"
        "&$limit=10&$offset=0");
  REQUIRE(h.last.table);
  CHECK(h.last.table->headers == std::vector<std::string>{"municipality", "magnitude"});
  CHECK(h.last.table->rows.size() == 10);
  CHECK(h.session.morePages);
  CHECK(has_button(h.last, "show me next page"));
}

TEST_CASE("results follow-ups") {
  Harness h;
  run_guided_dialogue(h);
  h.api.clear_log();

  h.say("add filter magnitude less than \"14\"");
  CHECK(h.session.state == StateId::ShowingResults);
  CHECK(h.session.spec.filters.size() == 2);
  auto data = h.api.data_requests();
  REQUIRE(data.size() == 1);
  CHECK(data[0].find("magnitude%20%3C%2014") != std::string::npos);

  h.say("sort by name ASC");
  REQUIRE(h.session.spec.sort);
  CHECK(h.session.spec.sort->field.str() == "AirQualityData.station_name");
  CHECK(h.api.data_requests().back().find("$order=station_name%20ASC") != std::string::npos);

  h.say("order by date ASC");
  CHECK(h.session.spec.sort->field.str() == "AirQualityData.date");

  h.say("calculate average of magnitude");
  CHECK(h.all_text().find("The average of magnitude is ") != std::string::npos);
  CHECK_FALSE(h.session.spec.aggregation);
  CHECK(h.session.state == StateId::ShowingResults);
}

TEST_CASE("paging to the end") {
  Harness h;
  run_guided_dialogue(h);
  int pages = 1;
  while (h.session.morePages) {
    h.say("show me next page");
    ++pages;
    REQUIRE(pages < 50);
  }
  CHECK(h.session.page == pages - 1);
  const int before = h.session.page;
  h.say("show me next page");
  CHECK(h.session.page == before);
  CHECK(h.all_text().find("There are no more results.") != std::string::npos);
}

TEST_CASE("misunderstandings keep the state") {
  Harness h;
  h.say("show me the list of air quality data");
  h.say("date");
  const Session before = h.session;
  h.say("what is the weather like");
  CHECK(h.session.state == before.state);
  CHECK(h.session.pending == before.pending);
  CHECK(h.last.messages.front() == "Sorry, I didn't understand that.");

  h.say("equals");
  h.say("the day after tomorrow");
  CHECK(h.session.state == StateId::AwaitingValue);
  CHECK(h.session.spec.filters.empty());
  CHECK(h.all_text().rfind("Sorry, ", 0) == 0);
}

TEST_CASE("out-of-scope intent") {
  Harness h;
  h.say("add filter magnitude less than \"14\"");
  CHECK(h.session.state == StateId::Idle);
  CHECK(h.session.spec.filters.empty());
}

TEST_CASE("direct search") {
  Harness h;
  h.say("show me all the air quality data with municipality equals to \"Barcelona\"");
  CHECK(h.session.state == StateId::AwaitingFieldSelection);
  REQUIRE(h.session.spec.filters.size() == 1);
  CHECK(std::get<value::Text>(h.session.spec.filters[0].value).original == "Barcelona");
  h.say("magnitude");
  h.say("show results");
  CHECK(h.session.state == StateId::ShowingResults);
  REQUIRE(h.last.table);
  CHECK(h.api.data_requests().back().find("municipality%20%3D%20%27Barcelona%27") != std::string::npos);
}

TEST_CASE("synonyms resolve to the same field") {
  for (const char* word : {"municipality", "town", "city"}) {
    Harness h;
    h.say("show me the list of air quality data");
    h.say(word);
    REQUIRE(h.session.pending.field);
    CHECK(h.session.pending.field->str() == "AirQualityData.municipality");
  }
}

TEST_CASE("invalid operator for the field type") {
  Harness h;
  h.say("show me the list of air quality data");
  h.say("municipality");
  h.say("less than");
  CHECK(h.session.state == StateId::AwaitingOperator);
  CHECK(h.all_text().find("can't be compared") != std::string::npos);
}

TEST_CASE("transport failures keep the session") {
  DownTransport down;
  ChatEngine engine(testing::air_quality_bot(), down, quiet);
  Session s = engine.create_session();
  for (const char* text : {"show me the list of air quality data", "no more filters", "municipality"})
    s = engine.handle_message(s, text, testing::kToday).session;
  auto turn = engine.handle_message(s, "no more fields", testing::kToday);
  CHECK(down.calls >= 1);
  CHECK(turn.session.state == StateId::AwaitingFieldSelection);
  CHECK(turn.response.messages.back().find("couldn't get the data") != std::string::npos);
  CHECK_FALSE(turn.response.table);
}

TEST_CASE("hidden fields never show up") {
  auto model = set_annotation(testing::air_quality_model(), ElementPath::parse("AirQualityData.latitude"),
                              change::ToExpose{false});
  Harness h(generate_bot(model));
  h.say("show me the list of air quality data");
  h.say("no more filters");
  h.say("no more fields");
  REQUIRE(h.last.table);
  for (auto& header : h.last.table->headers) CHECK(header != "latitude");
  CHECK(h.session.spec.select.size() == exposed_leaves(model).size());
}

TEST_CASE("ckan conversation") {
  Harness h(generate_bot(apply_refinements(
      testing::imported_bicycle_counts(),
      parse_refinement_script(nlohmann::ordered_json::parse(
          R"([{"op": "toFilterWith", "path": "BicycleCounts.name", "value": true},
              {"op": "toFilterWith", "path": "BicycleCounts.count", "value": true}])")))));
  h.say("show me the list of bicycle counts");
  CHECK(h.session.state == StateId::AwaitingFilterField);
  h.say("count");
  h.say("greater than");
  h.say("10");
  REQUIRE(h.session.spec.filters.size() == 1);
  CHECK(h.session.spec.filters[0].scope == FilterScope::Post);
  h.say("no more filters");
  h.say("name");
  h.say("count");
  h.say("no more fields");
  REQUIRE(h.last.table);
  for (auto& row : h.last.table->rows) CHECK(std::stod(row[1]) > 10);
  auto data = h.api.data_requests();
  REQUIRE(data.size() == 1);
  CHECK(data[0].find("limit=10000") != std::string::npos);
  CHECK(data[0].find("filters=") == std::string::npos);

  h.say("sort by count desc");
  REQUIRE(h.last.table);
  std::vector<double> counts;
  for (auto& row : h.last.table->rows) counts.push_back(std::stod(row[1]));
  CHECK(std::is_sorted(counts.rbegin(), counts.rend()));

  h.say("calculate maximum of count");
  CHECK(h.all_text().find("The maximum of count is ") != std::string::npos);
}
