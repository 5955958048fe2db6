// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "odcb/runtime/post_ops.hpp"
#include "odcb/runtime/transport.hpp"

namespace odcb {

/// Stand-in for the Socrata and CKAN endpoints a bot talks to, backed by
/// recorded fixtures (`<root>/socrata/<id>/`, `<root>/ckan/<id>/`) or
/// datasets registered in memory.
///
/// Socrata: /resource/<id>.json answers $select (columns and
/// avg/min/max/count), $where (AND-joined comparisons with = != < > <= >=
/// and contains()), $order, $limit and $offset; the metadata and views
/// documents are served too. CKAN: datastore_search with resource_id,
/// filters, limit and offset, and resource_show.
///
/// Every request target is logged. Thread-safe.
class MockApi {
 public:
  struct Response {
    int status = 200;
    nlohmann::ordered_json body;
  };

  explicit MockApi(std::filesystem::path fixtures_root = {});

  void add_socrata_dataset(const std::string& id, std::vector<Row> rows);
  void add_ckan_resource(const std::string& id, std::vector<Row> rows);

  // `target` is the request path plus raw query string.
  Response handle(std::string_view target);

  std::vector<std::string> requests() const;
  // Requests that queried rows (Socrata /resource/, CKAN datastore_search).
  std::vector<std::string> data_requests() const;
  void clear_log();

 private:
  const std::vector<Row>* rows_for(const std::string& dialect, const std::string& id);
  std::optional<nlohmann::ordered_json> fixture(const std::string& dialect, const std::string& id,
                                                const std::string& file) const;

  std::filesystem::path root_;
  mutable std::mutex mutex_;
  std::map<std::string, std::vector<Row>> rows_;  // "socrata/<id>" or "ckan/<id>"
  std::vector<std::string> log_;
};

/// Runs requests against a MockApi in process, ignoring scheme and host.
class MockTransport : public Transport {
 public:
  explicit MockTransport(MockApi& api) : api_(api) {}
  nlohmann::ordered_json get(const HttpRequestSpec& request) override;

 private:
  MockApi& api_;
};

// Query string of a target as decoded name/value pairs, in order.
std::vector<std::pair<std::string, std::string>> parse_query(std::string_view target);

std::string percent_decode(std::string_view s);

}  // namespace odcb
