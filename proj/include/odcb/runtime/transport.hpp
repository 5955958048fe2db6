// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "odcb/runtime/query.hpp"

namespace odcb {

/// Executes a request and returns the parsed JSON body.
/// Implementations throw Error(Transport) on any failure.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual nlohmann::ordered_json get(const HttpRequestSpec& request) = 0;
};

struct UrlParts {
  std::string scheme;
  std::string host;
  int port = 0;
  std::string target;  // path plus query, as given

  // "scheme://host[:port]"
  std::string origin() const;
};

// Throws Error(Transport) on anything but an absolute http(s) URL.
UrlParts split_url(std::string_view url);

/// Plain HTTP(S) client. Transient failures (connection errors, 5xx) are
/// retried once. `origin_override` ("http://127.0.0.1:8081") sends every
/// request to that origin with the original path and query, which points
/// a bot at a local mock of its API.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(std::optional<std::string> origin_override = std::nullopt,
                         std::chrono::milliseconds timeout = std::chrono::seconds(10));

  nlohmann::ordered_json get(const HttpRequestSpec& request) override;

 private:
  std::optional<std::string> origin_override_;
  std::chrono::milliseconds timeout_;
};

}  // namespace odcb
