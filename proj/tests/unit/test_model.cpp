// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "odcb/error.hpp"
#include "odcb/model/document.hpp"
#include "odcb/model/normalize.hpp"
#include "odcb/model/source_types.hpp"
#include "odcb/model/text.hpp"
#include "odcb/model/validate.hpp"
#include "support/fixtures.hpp"

using namespace odcb;

namespace {

PropertyDef leaf(std::string name, SemanticType type, std::string field = "") {
  PropertyDef p;
  p.name = name;
  p.semanticType = type;
  p.bot = {true, text::humanize(name), {}};
  p.binding = {field.empty() ? name : field, "text"};
  return p;
}

// Core concept with three properties plus a two-leaf component.
DataModel small_model() {
  DataModel m;
  m.name = "Sample";
  m.binding = {ApiType::Socrata, "data.example.org", "abcd-1234"};
  ConceptClass core{"Sample", true, {}, {true, "sample", {}}};
  core.properties.push_back(leaf("title", SemanticType::Text));
  core.properties.push_back(leaf("amount", SemanticType::Number));
  PropertyDef place;
  place.name = "place";
  place.semanticType = SemanticType::Composite;
  place.bot = {true, "place", {}};
  place.componentRef = "Place";
  core.properties.push_back(place);
  ConceptClass component{"Place", false, {}, {true, "place info", {}}};
  component.properties.push_back(leaf("lat", SemanticType::Number));
  component.properties.push_back(leaf("lon", SemanticType::Number));
  m.concepts = {core, component};
  return m;
}

std::multiset<std::pair<std::string, std::string>> leaf_bindings(const DataModel& m) {
  std::multiset<std::pair<std::string, std::string>> out;
  for (auto& path : all_leaves(m)) {
    const auto* p = find_property(m, path);
    out.emplace(p->binding.fieldName, p->binding.sourceType);
  }
  return out;
}

}  // namespace

TEST_CASE("humanize lowers and splits identifiers") {
  CHECK(text::humanize("air_quality_data") == "air quality data");
  CHECK(text::humanize("AirQualityData") == "air quality data");
  CHECK(text::humanize("municipality") == "municipality");
  CHECK(text::humanize("station-name") == "station name");
}

TEST_CASE("identifiers") {
  CHECK(text::is_identifier("AirQualityData"));
  CHECK(text::is_identifier("h01"));
  CHECK_FALSE(text::is_identifier("1abc"));
  CHECK_FALSE(text::is_identifier(""));
  CHECK_FALSE(text::is_identifier("a b"));
  CHECK(text::title_case_identifier("Air quality data") == "AirQualityData");
  CHECK(text::title_case_identifier("  air   quality  ") == "AirQuality");
  CHECK(text::lower_first("Location") == "location");
}

TEST_CASE("hostnames") {
  CHECK(text::is_hostname("analisi.transparenciacatalunya.cat"));
  CHECK(text::is_hostname("localhost:8080"));
  CHECK_FALSE(text::is_hostname("https://example.org"));
  CHECK_FALSE(text::is_hostname("bad_host.org"));
  CHECK_FALSE(text::is_hostname(""));
  CHECK_FALSE(text::is_hostname("-lead.example.org"));
}

TEST_CASE("enum names round-trip") {
  for (auto t : {SemanticType::Text, SemanticType::Number, SemanticType::Boolean, SemanticType::DateTime,
                 SemanticType::Url, SemanticType::GeoPoint, SemanticType::Composite})
    CHECK(semantic_type_from_string(to_string(t)) == t);
  for (auto a : {ApiType::Socrata, ApiType::CKAN, ApiType::OData, ApiType::Adhoc})
    CHECK(api_type_from_string(to_string(a)) == a);
  CHECK_FALSE(semantic_type_from_string("Float").has_value());
}

TEST_CASE("source type table") {
  CHECK(map_source_type(ApiType::Socrata, "number").type == SemanticType::Number);
  CHECK(map_source_type(ApiType::Socrata, "text").type == SemanticType::Text);
  CHECK(map_source_type(ApiType::Socrata, "calendar_date").type == SemanticType::DateTime);
  CHECK(map_source_type(ApiType::Socrata, "checkbox").type == SemanticType::Boolean);
  CHECK(map_source_type(ApiType::Socrata, "point").type == SemanticType::GeoPoint);
  CHECK(map_source_type(ApiType::Socrata, "url").type == SemanticType::Url);
  CHECK(map_source_type(ApiType::CKAN, "numeric").type == SemanticType::Number);
  CHECK(map_source_type(ApiType::CKAN, "timestamp").type == SemanticType::DateTime);
  CHECK(map_source_type(ApiType::CKAN, "text").type == SemanticType::Text);

  auto unknown = map_source_type(ApiType::Socrata, "definitely_not_a_type");
  CHECK(unknown.type == SemanticType::Text);
  CHECK_FALSE(unknown.known);
  CHECK(map_source_type(ApiType::Socrata, "NUMBER").known);
}

TEST_CASE("paths") {
  auto p = PropertyPath::parse("AirQualityData.date");
  CHECK(p.concept_name == "AirQualityData");
  CHECK(p.property == "date");
  CHECK(p.str() == "AirQualityData.date");
  CHECK_THROWS_AS(PropertyPath::parse("AirQualityData"), Error);
  auto e = ElementPath::parse("AirQualityData");
  CHECK_FALSE(e.property.has_value());
  CHECK(ElementPath::parse("A.b").str() == "A.b");
}

TEST_CASE("validate accepts the fixture models") {
  CHECK(validate(testing::imported_air_quality()).empty());
  CHECK(validate(testing::air_quality_model()).empty());
  CHECK(validate(small_model()).empty());
}

TEST_CASE("validate flags broken invariants") {
  SUBCASE("no core") {
    auto m = small_model();
    m.concepts[0].core = false;
    CHECK(validate(m).has_rule(rules::kExactlyOneCore));
  }
  SUBCASE("two cores") {
    auto m = small_model();
    m.concepts[1].core = true;
    CHECK(validate(m).has_rule(rules::kExactlyOneCore));
  }
  SUBCASE("filterable but hidden") {
    auto m = small_model();
    m.concepts[0].properties[0].toFilterWith = true;
    m.concepts[0].properties[0].bot.toExpose = false;
    CHECK(validate(m).has_rule(rules::kFilterableImpliesExposed));
  }
  SUBCASE("duplicate concept") {
    auto m = small_model();
    m.concepts[1].name = "Sample";
    CHECK(validate(m).has_rule(rules::kUniqueConceptName));
  }
  SUBCASE("duplicate property") {
    auto m = small_model();
    m.concepts[0].properties[1].name = "title";
    CHECK(validate(m).has_rule(rules::kUniquePropertyName));
  }
  SUBCASE("composite without ref") {
    auto m = small_model();
    m.concepts[0].properties[2].componentRef.reset();
    CHECK(validate(m).has_rule(rules::kCompositeIffComponentRef));
  }
  SUBCASE("leaf with ref") {
    auto m = small_model();
    m.concepts[0].properties[0].componentRef = "Place";
    CHECK(validate(m).has_rule(rules::kCompositeIffComponentRef));
  }
  SUBCASE("orphan concept") {
    auto m = small_model();
    m.concepts[0].properties.pop_back();
    CHECK(validate(m).has_rule(rules::kCompositionTree));
  }
  SUBCASE("cycle back to core") {
    auto m = small_model();
    PropertyDef back;
    back.name = "owner";
    back.semanticType = SemanticType::Composite;
    back.bot = {true, "owner", {}};
    back.componentRef = "Sample";
    m.concepts[1].properties.push_back(back);
    CHECK(validate(m).has_rule(rules::kCompositionTree));
  }
  SUBCASE("exposed without readable name") {
    auto m = small_model();
    m.concepts[0].properties[0].bot.readableName.clear();
    CHECK(validate(m).has_rule(rules::kReadableNameRequired));
  }
  SUBCASE("synonym repeats the readable name") {
    auto m = small_model();
    m.concepts[0].properties[0].bot.synonyms = {"title"};
    CHECK(validate(m).has_rule(rules::kSynonymsDistinct));
  }
  SUBCASE("duplicate synonyms") {
    auto m = small_model();
    m.concepts[0].properties[0].bot.synonyms = {"name", "Name"};
    CHECK(validate(m).has_rule(rules::kSynonymsDistinct));
  }
  SUBCASE("bad domain") {
    auto m = small_model();
    m.binding.domain = "not a host";
    CHECK(validate(m).has_rule(rules::kValidDomain));
  }
  SUBCASE("empty resource path") {
    auto m = small_model();
    m.binding.resourcePath.clear();
    CHECK(validate(m).has_rule(rules::kResourcePathRequired));
  }
  SUBCASE("empty field name") {
    auto m = small_model();
    m.concepts[1].properties[0].binding.fieldName.clear();
    CHECK(validate(m).has_rule(rules::kFieldNameRequired));
  }
  SUBCASE("bad identifier") {
    auto m = small_model();
    m.concepts[0].properties[0].name = "two words";
    CHECK(validate(m).has_rule(rules::kIdentifier));
  }
}

TEST_CASE("unknown source types are warnings only") {
  auto m = small_model();
  m.concepts[0].properties[0].binding.sourceType = "mystery";
  auto report = validate(m);
  CHECK(report.empty());
  REQUIRE(report.warnings.size() == 1);
  CHECK(report.warnings[0].rule == rules::kUnknownSourceType);
}

TEST_CASE("validate is pure") {
  auto m = small_model();
  m.concepts[0].core = false;
  CHECK(validate(m) == validate(m));
}

TEST_CASE("exposed leaves follow visible composites") {
  auto m = small_model();
  auto leaves = exposed_leaves(m);
  std::vector<std::string> names;
  for (auto& p : leaves) names.push_back(p.str());
  CHECK(names == std::vector<std::string>{"Sample.title", "Sample.amount", "Place.lat", "Place.lon"});

  m.concepts[0].properties[2].bot.toExpose = false;
  CHECK(exposed_leaves(m).size() == 2);
  CHECK(all_leaves(m).size() == 4);

  auto projected = exposed_projection(m);
  CHECK(projected.concepts.size() == 1);
  CHECK(projected.concepts[0].properties.size() == 2);
  CHECK(validate(projected).empty());
}

TEST_CASE("normalize groups core properties into a component") {
  auto base = testing::imported_air_quality();
  auto m = normalize(base, {{"Location", {"latitude", "longitude"}}});
  CHECK(validate(m).empty());
  const auto* location = m.find_concept("Location");
  REQUIRE(location);
  CHECK_FALSE(location->core);
  CHECK(location->properties.size() == 2);
  CHECK(location->find_property("latitude"));
  CHECK(location->find_property("longitude"));
  const auto* link = m.core_concept()->find_property("location");
  REQUIRE(link);
  CHECK(link->semanticType == SemanticType::Composite);
  CHECK(link->componentRef == "Location");
  CHECK_FALSE(m.core_concept()->find_property("latitude"));
  CHECK(all_leaves(m).size() == all_leaves(base).size());
  CHECK(leaf_bindings(m) == leaf_bindings(base));
}

TEST_CASE("normalize edge cases") {
  auto base = testing::imported_air_quality();
  CHECK(normalize(base, {}) == base);
  CHECK(normalize(normalize(base, {}), {}) == base);

  auto code_of = [&](const std::vector<Grouping>& g) {
    try {
      normalize(base, g);
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::Transport;
  };
  CHECK(code_of({{"Location", {"latitude", "altitude"}}}) == ErrorCode::UnknownProperty);
  CHECK(code_of({{"AirQualityData", {"latitude"}}}) == ErrorCode::NameCollision);
  CHECK(code_of({{"Location", {"latitude"}}, {"Place", {"latitude"}}}) == ErrorCode::NameCollision);
  CHECK(code_of({{"Date", {"latitude"}}}) == ErrorCode::NameCollision);  // core already has `date`
}

TEST_CASE("normalize keeps leaf bindings for random groupings") {
  auto base = testing::imported_air_quality();
  std::vector<std::string> names;
  for (auto& p : base.core_concept()->properties) names.push_back(p.name);
  std::mt19937 rng(7);
  for (int round = 0; round < 25; ++round) {
    std::shuffle(names.begin(), names.end(), rng);
    std::vector<Grouping> groups{{"GroupA", {names[0], names[1]}}, {"GroupB", {names[2], names[3], names[4]}}};
    auto m = normalize(base, groups);
    CHECK(validate(m).empty());
    CHECK(leaf_bindings(m) == leaf_bindings(base));
  }
}

TEST_CASE("document round trip") {
  for (auto m : {testing::imported_air_quality(), testing::air_quality_model(), small_model(),
                 normalize(testing::imported_air_quality(), {{"Location", {"latitude", "longitude"}}})}) {
    CHECK(restore(persist(m)) == m);
    CHECK(restore_text(persist_text(m)) == m);
  }
  auto doc = persist(small_model());
  std::vector<std::string> keys;
  for (auto& [k, v] : doc.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"name", "version", "binding", "concepts"});
}

TEST_CASE("document errors") {
  auto text = persist_text(small_model());
  try {
    restore_text(text.substr(0, text.size() / 2));
    FAIL("truncated document accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedDocument);
  }
  auto doc = persist(small_model());
  doc["version"] = "99";
  try {
    restore(doc);
    FAIL("version 99 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaVersionMismatch);
  }
  doc = persist(small_model());
  doc["concepts"][0]["properties"][0]["semanticType"] = "Float";
  CHECK_THROWS_AS(restore(doc), Error);
}

TEST_CASE("fixture model file matches the refinement replay") {
  auto stored = restore_text(testing::read_text(testing::fixtures_dir() / "models" / "air_quality.json"));
  CHECK(stored == testing::air_quality_model());
}
