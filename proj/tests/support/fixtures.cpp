// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "support/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "odcb/botgen/generate.hpp"
#include "odcb/importers/importers.hpp"
#include "odcb/refine/refine.hpp"

namespace odcb::testing {

std::filesystem::path fixtures_dir() { return ODCB_FIXTURES_DIR; }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DataModel imported_air_quality() {
  auto docs = read_fixture_documents(ApiType::Socrata, fixtures_dir(), kAirQualityHost, kAirQualityId);
  return ImporterRegistry::with_builtins().run(ApiType::Socrata, docs);
}

DataModel air_quality_model() {
  auto script = nlohmann::ordered_json::parse(read_text(fixtures_dir() / "models" / "air_quality.refine.json"));
  return apply_refinements(imported_air_quality(), parse_refinement_script(script));
}

BotDefinition air_quality_bot() { return generate_bot(air_quality_model()); }

DataModel imported_bicycle_counts() {
  auto docs = read_fixture_documents(ApiType::CKAN, fixtures_dir(), kCkanHost, kCkanId);
  return ImporterRegistry::with_builtins().run(ApiType::CKAN, docs);
}

std::vector<Row> fixture_rows(const std::string& dialect, const std::string& id) {
  auto doc = nlohmann::ordered_json::parse(read_text(fixtures_dir() / dialect / id / "rows.json"));
  std::vector<Row> rows;
  for (auto& r : doc) rows.push_back(r);
  return rows;
}

}  // namespace odcb::testing
