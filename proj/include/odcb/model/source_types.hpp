// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <string_view>

#include "odcb/model/data_model.hpp"

namespace odcb {

struct MappedType {
  SemanticType type = SemanticType::Text;
  bool known = false;  // false: fell back to Text, caller should warn
};

/// Table-driven mapping from the type names an API reports to semantic
/// types. Total; unknown names map to Text with known = false.
///
///   Socrata  text -> Text; number, double, money, percent -> Number;
///            calendar_date, floating_timestamp, fixed_timestamp, date -> DateTime;
///            checkbox -> Boolean; url -> Url; point, location -> GeoPoint
///   CKAN     text, varchar -> Text; numeric, int, int4, int8, float8 -> Number;
///            timestamp, date -> DateTime; bool -> Boolean
///   OData    Edm.String; Edm.Int16/32/64, Edm.Decimal, Edm.Double, Edm.Single;
///            Edm.DateTimeOffset, Edm.Date; Edm.Boolean; Edm.GeographyPoint
///   Adhoc    string, integer, number, boolean (OpenAPI primitive names)
MappedType map_source_type(ApiType api, std::string_view source_type);

}  // namespace odcb
