// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/runtime/post_ops.hpp"

#include <algorithm>
#include <cmath>

#include "odcb/error.hpp"
#include "odcb/model/text.hpp"

namespace odcb {

namespace {

std::chrono::year_month_day no_today() { return std::chrono::year_month_day{}; }

std::optional<int> compare(const Value& a, const Value& b) {
  auto three_way = [](const auto& x, const auto& y) { return x < y ? -1 : (y < x ? 1 : 0); };
  if (auto* x = std::get_if<value::Number>(&a)) {
    if (auto* y = std::get_if<value::Number>(&b)) return three_way(x->value, y->value);
    return std::nullopt;
  }
  if (auto* x = std::get_if<value::Date>(&a)) {
    if (auto* y = std::get_if<value::Date>(&b)) return three_way(x->value, y->value);
    return std::nullopt;
  }
  if (auto* x = std::get_if<value::Bool>(&a)) {
    if (auto* y = std::get_if<value::Bool>(&b)) return three_way(x->value, y->value);
    return std::nullopt;
  }
  if (auto* x = std::get_if<value::Text>(&a)) {
    if (auto* y = std::get_if<value::Text>(&b)) return three_way(x->folded(), y->folded());
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Value> typed_cell(const Row& row, const std::string& field, SemanticType type) {
  if (!row.is_object()) return std::nullopt;
  auto it = row.find(field);
  if (it == row.end() || it->is_null()) return std::nullopt;
  const auto& cell = *it;
  switch (type) {
    case SemanticType::Number:
      if (cell.is_number()) return value::Number{cell.get<double>()};
      break;
    case SemanticType::Boolean:
      if (cell.is_boolean()) return value::Bool{cell.get<bool>()};
      break;
    case SemanticType::GeoPoint:
    case SemanticType::Composite:
      return std::nullopt;
    case SemanticType::Text:
    case SemanticType::Url:
    case SemanticType::DateTime:
      break;
  }
  std::string raw;
  if (cell.is_string()) raw = cell.get<std::string>();
  else if (cell.is_primitive()) raw = cell.dump();
  else return std::nullopt;
  try {
    return parse_value(type, raw, no_today());
  } catch (const Error&) {
    return std::nullopt;
  }
}

bool satisfies(const Value& cell, Operator op, const Value& operand) {
  if (op == Operator::Contains) {
    auto* x = std::get_if<value::Text>(&cell);
    auto* y = std::get_if<value::Text>(&operand);
    return x && y && x->folded().find(y->folded()) != std::string::npos;
  }
  auto c = compare(cell, operand);
  if (!c) return false;
  switch (op) {
    case Operator::Equals: return *c == 0;
    case Operator::NotEquals: return *c != 0;
    case Operator::LessThan: return *c < 0;
    case Operator::GreaterThan: return *c > 0;
    case Operator::Contains: break;
  }
  return false;
}

PostOpsResult apply_post_ops(std::vector<Row> rows, const std::vector<PostFilter>& filters,
                             const std::optional<PostSort>& sort, const std::optional<PostAggregate>& aggregate) {
  PostOpsResult out;
  if (!filters.empty()) {
    std::vector<Row> kept;
    kept.reserve(rows.size());
    for (auto& row : rows) {
      bool keep = true;
      for (auto& f : filters) {
        auto cell = typed_cell(row, f.fieldName, f.type);
        if (!cell) {
          ++out.missingField;
          keep = false;
          break;
        }
        if (!satisfies(*cell, f.op, f.value)) {
          keep = false;
          break;
        }
      }
      if (keep) kept.push_back(std::move(row));
    }
    rows = std::move(kept);
  }

  if (sort) {
    std::vector<std::pair<std::optional<Value>, Row>> keyed;
    keyed.reserve(rows.size());
    for (auto& row : rows) {
      auto key = typed_cell(row, sort->fieldName, sort->type);
      keyed.emplace_back(std::move(key), std::move(row));
    }
    const bool desc = sort->direction == SortDirection::Desc;
    std::stable_sort(keyed.begin(), keyed.end(), [desc](const auto& a, const auto& b) {
      if (!a.first || !b.first) return a.first.has_value() && !b.first.has_value();
      auto c = compare(*a.first, *b.first);
      if (!c) return false;
      return desc ? *c > 0 : *c < 0;
    });
    rows.clear();
    for (auto& [key, row] : keyed) rows.push_back(std::move(row));
  }

  if (aggregate) {
    // Neumaier-compensated sum keeps long averages close to exact.
    double sum = 0, compensation = 0, lo = 0, hi = 0;
    std::size_t count = 0;
    for (auto& row : rows) {
      auto cell = typed_cell(row, aggregate->fieldName, SemanticType::Number);
      if (!cell) {
        ++out.missingField;
        continue;
      }
      double x = std::get<value::Number>(*cell).value;
      double t = sum + x;
      compensation += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
      sum = t;
      lo = count == 0 ? x : std::min(lo, x);
      hi = count == 0 ? x : std::max(hi, x);
      ++count;
    }
    if (count > 0) {
      switch (aggregate->function) {
        case AggFunction::Average: out.scalar = (sum + compensation) / static_cast<double>(count); break;
        case AggFunction::Minimum: out.scalar = lo; break;
        case AggFunction::Maximum: out.scalar = hi; break;
      }
    }
  }
  out.rows = std::move(rows);
  return out;
}

}  // namespace odcb
