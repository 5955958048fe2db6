// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/model/source_types.hpp"

#include <string>
#include <utility>

#include "odcb/model/text.hpp"

namespace odcb {

namespace {

using Entry = std::pair<std::string_view, SemanticType>;

constexpr Entry kSocrata[] = {
    {"text", SemanticType::Text},
    {"number", SemanticType::Number},
    {"double", SemanticType::Number},
    {"money", SemanticType::Number},
    {"percent", SemanticType::Number},
    {"calendar_date", SemanticType::DateTime},
    {"floating_timestamp", SemanticType::DateTime},
    {"fixed_timestamp", SemanticType::DateTime},
    {"date", SemanticType::DateTime},
    {"checkbox", SemanticType::Boolean},
    {"url", SemanticType::Url},
    {"point", SemanticType::GeoPoint},
    {"location", SemanticType::GeoPoint},
};

constexpr Entry kCkan[] = {
    {"text", SemanticType::Text},
    {"varchar", SemanticType::Text},
    {"numeric", SemanticType::Number},
    {"int", SemanticType::Number},
    {"int4", SemanticType::Number},
    {"int8", SemanticType::Number},
    {"float8", SemanticType::Number},
    {"timestamp", SemanticType::DateTime},
    {"date", SemanticType::DateTime},
    {"bool", SemanticType::Boolean},
};

constexpr Entry kOData[] = {
    {"edm.string", SemanticType::Text},
    {"edm.int16", SemanticType::Number},
    {"edm.int32", SemanticType::Number},
    {"edm.int64", SemanticType::Number},
    {"edm.decimal", SemanticType::Number},
    {"edm.double", SemanticType::Number},
    {"edm.single", SemanticType::Number},
    {"edm.datetimeoffset", SemanticType::DateTime},
    {"edm.date", SemanticType::DateTime},
    {"edm.boolean", SemanticType::Boolean},
    {"edm.geographypoint", SemanticType::GeoPoint},
};

constexpr Entry kAdhoc[] = {
    {"string", SemanticType::Text},
    {"integer", SemanticType::Number},
    {"number", SemanticType::Number},
    {"boolean", SemanticType::Boolean},
};

template <size_t N>
MappedType lookup(const Entry (&table)[N], const std::string& key) {
  for (auto& [name, type] : table)
    if (name == key) return {type, true};
  return {SemanticType::Text, false};
}

}  // namespace

MappedType map_source_type(ApiType api, std::string_view source_type) {
  const std::string key = text::to_lower(text::trim(source_type));
  switch (api) {
    case ApiType::Socrata: return lookup(kSocrata, key);
    case ApiType::CKAN: return lookup(kCkan, key);
    case ApiType::OData: return lookup(kOData, key);
    case ApiType::Adhoc: return lookup(kAdhoc, key);
  }
  return {};
}

}  // namespace odcb
