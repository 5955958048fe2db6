// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "odcb/model/data_model.hpp"
#include "odcb/runtime/post_ops.hpp"

namespace odcb {

struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const Table&) const = default;
};

struct BotResponse {
  std::vector<std::string> messages;
  std::vector<std::string> buttons;
  std::optional<Table> table;

  bool operator==(const BotResponse&) const = default;
};

// Display text of a raw cell; absent and null cells are empty.
std::string cell_text(const Row& row, const std::string& field);

/// One column per selected property, headed by its readable name, one
/// line per row, and a footer naming the page. `total` is the full result
/// count when the API reports it; without it a full page means more
/// results may follow. No rows gives a "no results" message and no table.
BotResponse render(const DataModel& model, const std::vector<Row>& rows, const std::vector<PropertyPath>& select,
                   int page, int pageSize, std::optional<std::size_t> total = std::nullopt);

/// Fixed-width text layout of a table, for terminals.
std::string format_table(const Table& table);

nlohmann::ordered_json response_to_json(const BotResponse& response);

}  // namespace odcb
