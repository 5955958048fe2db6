// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/nlu/value.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "odcb/error.hpp"
#include "odcb/model/text.hpp"

namespace odcb {

std::string value::Text::folded() const { return text::to_lower(original); }

std::string iso_date(std::chrono::year_month_day d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                static_cast<unsigned>(d.day()));
  return buf;
}

std::string format_number(double x) {
  if (std::isfinite(x) && x == std::trunc(x) && std::fabs(x) < 1e15) {
    if (x == 0) return "0";
    return std::to_string(static_cast<long long>(x));
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string describe(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, value::Text>) return x.original;
        else if constexpr (std::is_same_v<T, value::Number>) return format_number(x.value);
        else if constexpr (std::is_same_v<T, value::Bool>) return x.value ? "true" : "false";
        else if constexpr (std::is_same_v<T, value::Date>) return iso_date(x.value);
        else if constexpr (std::is_same_v<T, PropertyPath>) return x.str();
        else return std::string(to_string(x));
      },
      v);
}

namespace {

[[noreturn]] void unparsable(SemanticType type, std::string_view text) {
  throw Error(ErrorCode::UnparsableValue,
              "'" + std::string(text) + "' is not a valid " + std::string(to_string(type)) + " value");
}

std::string strip_quotes(std::string_view s) {
  auto t = text::trim(s);
  if (t.size() >= 2 && ((t.front() == '"' && t.back() == '"') || (t.front() == '\'' && t.back() == '\'')))
    return text::trim(std::string_view(t).substr(1, t.size() - 2));
  return t;
}

bool parse_uint(std::string_view s, unsigned& out) {
  if (s.empty()) return false;
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::optional<std::chrono::year_month_day> parse_iso_date(std::string_view s) {
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (s.size() > 10 && s[10] != 'T' && s[10] != 't' && s[10] != ' ') return std::nullopt;
  unsigned y = 0, m = 0, d = 0;
  if (!parse_uint(s.substr(0, 4), y) || !parse_uint(s.substr(5, 2), m) || !parse_uint(s.substr(8, 2), d))
    return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{static_cast<int>(y)}, std::chrono::month{m}, std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return ymd;
}

}  // namespace

Value parse_value(SemanticType type, std::string_view raw, std::chrono::year_month_day today) {
  const std::string s = strip_quotes(raw);
  const std::string folded = text::to_lower(s);
  switch (type) {
    case SemanticType::Text:
    case SemanticType::Url:
      if (s.empty()) unparsable(type, raw);
      return value::Text{s};
    case SemanticType::Number: {
      std::string_view digits = s;
      if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
      double x = 0;
      auto res = std::from_chars(digits.data(), digits.data() + digits.size(), x);
      if (digits.empty() || res.ec != std::errc() || res.ptr != digits.data() + digits.size() || !std::isfinite(x))
        unparsable(type, raw);
      return value::Number{x};
    }
    case SemanticType::Boolean:
      if (folded == "true" || folded == "yes") return value::Bool{true};
      if (folded == "false" || folded == "no") return value::Bool{false};
      unparsable(type, raw);
    case SemanticType::DateTime: {
      using std::chrono::days;
      using std::chrono::sys_days;
      if (folded == "today") return value::Date{today};
      if (folded == "yesterday") return value::Date{std::chrono::year_month_day{sys_days{today} - days{1}}};
      if (auto d = parse_iso_date(s)) return value::Date{*d};
      unparsable(type, raw);
    }
    case SemanticType::GeoPoint:
    case SemanticType::Composite:
      break;
  }
  unparsable(type, raw);
}

}  // namespace odcb
