// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/runtime/render.hpp"

#include <algorithm>

#include "odcb/error.hpp"
#include "odcb/nlu/value.hpp"

namespace odcb {

std::string cell_text(const Row& row, const std::string& field) {
  if (!row.is_object()) return {};
  auto it = row.find(field);
  if (it == row.end() || it->is_null()) return {};
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number()) return format_number(it->get<double>());
  if (it->is_boolean()) return it->get<bool>() ? "true" : "false";
  if (it->is_object() && it->contains("coordinates") && (*it)["coordinates"].is_array() &&
      (*it)["coordinates"].size() == 2 && (*it)["coordinates"][0].is_number() && (*it)["coordinates"][1].is_number()) {
    // GeoJSON points are longitude first.
    return format_number((*it)["coordinates"][1].get<double>()) + ", " +
           format_number((*it)["coordinates"][0].get<double>());
  }
  return it->dump();
}

BotResponse render(const DataModel& model, const std::vector<Row>& rows, const std::vector<PropertyPath>& select,
                   int page, int pageSize, std::optional<std::size_t> total) {
  BotResponse out;
  if (rows.empty()) {
    out.messages.push_back(page == 0 ? "No results." : "No more results.");
    return out;
  }
  Table table;
  std::vector<std::string> fields;
  for (auto& path : select) {
    const PropertyDef* p = find_property(model, path);
    if (!p) throw Error(ErrorCode::UnknownPath, "cannot render " + path.str());
    table.headers.push_back(p->bot.readableName.empty() ? p->name : p->bot.readableName);
    fields.push_back(p->binding.fieldName);
  }
  for (auto& row : rows) {
    std::vector<std::string> line;
    line.reserve(fields.size());
    for (auto& f : fields) line.push_back(cell_text(row, f));
    table.rows.push_back(std::move(line));
  }
  out.table = std::move(table);

  std::string footer = "Page " + std::to_string(page + 1);
  if (total) {
    const std::size_t pages = pageSize > 0 ? (*total + pageSize - 1) / pageSize : 1;
    footer += " of " + std::to_string(pages) + " (" + std::to_string(*total) + " results).";
    if (static_cast<std::size_t>(page + 1) < pages) footer += " More pages available.";
  } else if (static_cast<int>(rows.size()) >= pageSize) {
    footer += ". More results may be available.";
  } else {
    footer += ". End of results.";
  }
  out.messages.push_back(std::move(footer));
  return out;
}

std::string format_table(const Table& table) {
  std::vector<std::size_t> width(table.headers.size(), 0);
  for (std::size_t c = 0; c < table.headers.size(); ++c) width[c] = table.headers[c].size();
  for (auto& row : table.rows)
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());

  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < width.size(); ++c) {
      const std::string cell = c < cells.size() ? cells[c] : std::string();
      s += (c ? " | " : "") + cell;
      if (c + 1 < width.size()) s += std::string(width[c] - cell.size(), ' ');
    }
    return s + "\n";
  };
  std::string out = line(table.headers);
  std::string rule;
  for (std::size_t c = 0; c < width.size(); ++c) rule += (c ? "-+-" : "") + std::string(width[c], '-');
  out += rule + "\n";
  for (auto& row : table.rows) out += line(row);
  return out;
}

nlohmann::ordered_json response_to_json(const BotResponse& response) {
  nlohmann::ordered_json j;
  j["messages"] = response.messages;
  j["buttons"] = response.buttons;
  if (response.table) {
    j["table"] = {{"headers", response.table->headers}, {"rows", response.table->rows}};
  } else {
    j["table"] = nullptr;
  }
  return j;
}

}  // namespace odcb
