// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace odcb::text {

// ASCII-only case folding; non-ASCII bytes pass through untouched.
std::string to_lower(std::string_view s);

std::string trim(std::string_view s);

// Splits on runs of ASCII whitespace.
std::vector<std::string> split_words(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// "air_quality_data" -> "air quality data", "AirQualityData" -> "air quality data".
std::string humanize(std::string_view name);

bool is_identifier(std::string_view s);

// Replaces every non [A-Za-z0-9_] byte with '_' and prefixes '_' when the
// result would start with a digit. Empty input yields "_".
std::string to_identifier(std::string_view s);

// "air  quality data" -> "AirQualityData". Non-alphanumeric bytes separate words.
std::string title_case_identifier(std::string_view title);

// First letter lowered: "Location" -> "location".
std::string lower_first(std::string_view s);

// RFC 1123 hostname, optionally followed by ":port".
bool is_hostname(std::string_view s);

}  // namespace odcb::text
