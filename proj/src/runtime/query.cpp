// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/runtime/query.hpp"

#include <cmath>

#include <json.hpp>

#include "odcb/error.hpp"

namespace odcb {

std::string_view to_string(FilterScope s) noexcept { return s == FilterScope::Server ? "server" : "post"; }

const std::string& field_name(const DataModel& model, const PropertyPath& path) {
  const PropertyDef* p = find_property(model, path);
  if (!p || !p->is_leaf()) throw Error(ErrorCode::UnknownPath, "no leaf property " + path.str());
  return p->binding.fieldName;
}

FilterScope filter_scope_for(ApiType api, const std::vector<Filter>& existing, const Filter& candidate,
                             const DataModel& model) {
  if (api != ApiType::CKAN) return FilterScope::Server;
  if (candidate.op != Operator::Equals) return FilterScope::Post;
  const std::string& name = field_name(model, candidate.field);
  for (auto& f : existing)
    if (f.scope == FilterScope::Server && field_name(model, f.field) == name) return FilterScope::Post;
  return FilterScope::Server;
}

std::string encode_query_component(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size() * 3);
  for (unsigned char c : s) {
    bool keep = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '.' ||
                c == '_' || c == '~' || c == ',' || c == '(' || c == ')';
    if (keep) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

namespace {

std::string quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "''";
    else out.push_back(c);
  }
  return out + "'";
}

std::string_view soql_operator(Operator op) {
  switch (op) {
    case Operator::Equals: return "=";
    case Operator::NotEquals: return "!=";
    case Operator::LessThan: return "<";
    case Operator::GreaterThan: return ">";
    case Operator::Contains: break;
  }
  return "";
}

std::string soql_condition(const std::string& field, const Filter& f) {
  if (f.op == Operator::Contains) return "contains(" + field + "," + soql_literal(f.value) + ")";
  return field + " " + std::string(soql_operator(f.op)) + " " + soql_literal(f.value);
}

std::string_view soql_function(AggFunction fn) {
  switch (fn) {
    case AggFunction::Average: return "avg";
    case AggFunction::Minimum: return "min";
    case AggFunction::Maximum: return "max";
  }
  return "";
}

nlohmann::ordered_json ckan_value(const Value& v) {
  if (auto* n = std::get_if<value::Number>(&v)) {
    // Integral values as integers, so the filter reads {"count":12}.
    if (std::trunc(n->value) == n->value && std::fabs(n->value) < 9.0e15) return static_cast<long long>(n->value);
    return n->value;
  }
  if (auto* b = std::get_if<value::Bool>(&v)) return b->value;
  if (auto* d = std::get_if<value::Date>(&v)) return iso_date(d->value);
  return describe(v);
}

struct QueryString {
  std::string text;
  void add(std::string_view name, std::string_view value) {
    text += text.empty() ? "?" : "&";
    text += name;
    text += "=";
    text += encode_query_component(value);
  }
};

HttpRequestSpec socrata_request(const ApiBinding& b, const QuerySpec& spec, int page, const DataModel& model) {
  QueryString q;
  std::string select;
  if (spec.aggregation) {
    select = std::string(soql_function(spec.aggregation->function)) + "(" + field_name(model, spec.aggregation->field) +
             ")";
  } else {
    for (auto& p : spec.select) select += (select.empty() ? "" : ",") + field_name(model, p);
  }
  if (!select.empty()) q.add("$select", select);

  std::string where;
  for (auto& f : spec.filters) {
    if (f.scope != FilterScope::Server) continue;
    where += (where.empty() ? "" : " AND ") + soql_condition(field_name(model, f.field), f);
  }
  if (!where.empty()) q.add("$where", where);

  if (spec.sort && !spec.aggregation)
    q.add("$order",
          field_name(model, spec.sort->field) + (spec.sort->direction == SortDirection::Asc ? " ASC" : " DESC"));
  q.add("$limit", std::to_string(spec.pageSize));
  q.add("$offset", std::to_string(static_cast<long long>(page) * spec.pageSize));
  return {"GET", "https://" + b.domain + "/resource/" + b.resourcePath + ".json" + q.text};
}

HttpRequestSpec ckan_request(const ApiBinding& b, const QuerySpec& spec, int page, const DataModel& model) {
  QueryString q;
  q.add("resource_id", b.resourcePath);
  nlohmann::ordered_json filters = nlohmann::ordered_json::object();
  for (auto& f : spec.filters) {
    if (f.scope != FilterScope::Server) continue;
    if (f.op != Operator::Equals)
      throw Error(ErrorCode::InvariantViolation, "CKAN server filters must be equality filters");
    filters[field_name(model, f.field)] = ckan_value(f.value);
  }
  if (!filters.empty()) q.add("filters", filters.dump());
  q.add("limit", std::to_string(spec.pageSize));
  q.add("offset", std::to_string(static_cast<long long>(page) * spec.pageSize));
  return {"GET", "https://" + b.domain + "/api/3/action/datastore_search" + q.text};
}

}  // namespace

std::string soql_literal(const Value& v) {
  if (auto* n = std::get_if<value::Number>(&v)) return format_number(n->value);
  if (auto* b = std::get_if<value::Bool>(&v)) return b->value ? "true" : "false";
  if (auto* d = std::get_if<value::Date>(&v)) return quote(iso_date(d->value) + "T00:00:00.000");
  return quote(describe(v));
}

HttpRequestSpec build_request(const ApiBinding& binding, const QuerySpec& spec, int page, const DataModel& model) {
  if (page < 0) throw Error(ErrorCode::InvariantViolation, "negative page");
  if (spec.pageSize <= 0) throw Error(ErrorCode::InvariantViolation, "page size must be positive");
  switch (binding.apiType) {
    case ApiType::Socrata: return socrata_request(binding, spec, page, model);
    case ApiType::CKAN: return ckan_request(binding, spec, page, model);
    case ApiType::OData:
    case ApiType::Adhoc: break;
  }
  throw Error(ErrorCode::UnsupportedDialect, "no query compiler for " + std::string(to_string(binding.apiType)));
}

}  // namespace odcb
