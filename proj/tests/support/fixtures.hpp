// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "odcb/botgen/bot_definition.hpp"
#include "odcb/model/data_model.hpp"
#include "odcb/runtime/post_ops.hpp"

namespace odcb::testing {

inline constexpr const char* kAirQualityHost = "analisi.transparenciacatalunya.cat";
inline constexpr const char* kAirQualityId = "uy6k-2s8r";
inline constexpr const char* kCkanHost = "opendata.example.org";
inline constexpr const char* kCkanId = "b6b9e3d2-7a51-4c0e-9f35-2d8a0e4c1a77";

// The date the recorded air-quality rows treat as "today".
inline constexpr std::chrono::year_month_day kToday{std::chrono::year{2020}, std::chrono::month{6},
                                                    std::chrono::day{16}};

std::filesystem::path fixtures_dir();
std::string read_text(const std::filesystem::path& path);

// Straight import of the recorded Socrata documents, no refinement.
DataModel imported_air_quality();
// Imported model plus fixtures/models/air_quality.refine.json.
DataModel air_quality_model();
BotDefinition air_quality_bot();

DataModel imported_bicycle_counts();

std::vector<Row> fixture_rows(const std::string& dialect, const std::string& id);

}  // namespace odcb::testing
