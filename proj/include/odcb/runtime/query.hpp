// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odcb/botgen/vocabulary.hpp"
#include "odcb/model/data_model.hpp"
#include "odcb/nlu/value.hpp"

namespace odcb {

// Server filters go into the request URL; Post filters run over fetched rows.
enum class FilterScope { Server, Post };

std::string_view to_string(FilterScope s) noexcept;

struct Filter {
  PropertyPath field;
  Operator op = Operator::Equals;
  Value value;
  FilterScope scope = FilterScope::Server;

  bool operator==(const Filter&) const = default;
};

struct SortSpec {
  PropertyPath field;
  SortDirection direction = SortDirection::Asc;

  bool operator==(const SortSpec&) const = default;
};

struct Aggregation {
  AggFunction function = AggFunction::Average;
  PropertyPath field;

  bool operator==(const Aggregation&) const = default;
};

/// What the user has asked for so far, independent of any API dialect.
struct QuerySpec {
  std::string concept_name;
  std::vector<Filter> filters;
  std::vector<PropertyPath> select;
  std::optional<SortSpec> sort;
  std::optional<Aggregation> aggregation;
  int pageSize = 10;

  bool operator==(const QuerySpec&) const = default;
};

struct HttpRequestSpec {
  std::string method = "GET";
  std::string url;

  bool operator==(const HttpRequestSpec&) const = default;
};

/// Scope a new filter gets under `api`. Socrata takes everything server
/// side; CKAN's datastore_search only filters by equality, one value per
/// field, so anything else (or a second filter on the same field) runs on
/// fetched rows.
FilterScope filter_scope_for(ApiType api, const std::vector<Filter>& existing, const Filter& candidate,
                             const DataModel& model);

/// Percent-encodes everything except RFC 3986 unreserved characters and
/// `,()`, which SoQL expressions use heavily and which are legal in query
/// strings. Hex digits are uppercase.
std::string encode_query_component(std::string_view s);

/// SoQL literal for a typed value: strings single-quoted with '' for ',
/// dates as floating timestamps, numbers in shortest decimal form.
std::string soql_literal(const Value& v);

/// Compiles the spec into a GET request for the binding's dialect.
///
/// Socrata: /resource/<id>.json with $select, $where, $order, $limit,
/// $offset in that order; empty clauses are omitted, $order is dropped
/// under aggregation. CKAN: /api/3/action/datastore_search with
/// resource_id, filters, limit, offset. Only Server filters are emitted.
/// `model` resolves property paths to API field names.
///
/// Throws Error(UnsupportedDialect) for OData and Adhoc bindings and
/// Error(UnknownPath) for paths missing from `model`.
HttpRequestSpec build_request(const ApiBinding& binding, const QuerySpec& spec, int page, const DataModel& model);

// API field name bound to `path`. Throws Error(UnknownPath).
const std::string& field_name(const DataModel& model, const PropertyPath& path);

}  // namespace odcb
