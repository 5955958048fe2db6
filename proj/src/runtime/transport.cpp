// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include <httplib.h>

#include "odcb/runtime/transport.hpp"

#include <charconv>

#include "odcb/error.hpp"

namespace odcb {

std::string UrlParts::origin() const {
  std::string out = scheme + "://" + host;
  const int default_port = scheme == "https" ? 443 : 80;
  if (port != 0 && port != default_port) out += ":" + std::to_string(port);
  return out;
}

UrlParts split_url(std::string_view url) {
  UrlParts parts;
  auto sep = url.find("://");
  if (sep == std::string_view::npos) throw Error(ErrorCode::Transport, "not an absolute URL: " + std::string(url));
  parts.scheme = std::string(url.substr(0, sep));
  if (parts.scheme != "http" && parts.scheme != "https")
    throw Error(ErrorCode::Transport, "unsupported scheme in " + std::string(url));
  auto rest = url.substr(sep + 3);
  auto slash = rest.find_first_of("/?");
  auto authority = rest.substr(0, slash);
  parts.target = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
  if (!parts.target.empty() && parts.target.front() == '?') parts.target.insert(0, "/");
  auto colon = authority.rfind(':');
  if (colon != std::string_view::npos) {
    auto port = authority.substr(colon + 1);
    auto res = std::from_chars(port.data(), port.data() + port.size(), parts.port);
    if (res.ec != std::errc() || res.ptr != port.data() + port.size() || parts.port <= 0 || parts.port > 65535)
      throw Error(ErrorCode::Transport, "bad port in " + std::string(url));
    authority = authority.substr(0, colon);
  } else {
    parts.port = parts.scheme == "https" ? 443 : 80;
  }
  if (authority.empty()) throw Error(ErrorCode::Transport, "no host in " + std::string(url));
  parts.host = std::string(authority);
  return parts;
}

HttpTransport::HttpTransport(std::optional<std::string> origin_override, std::chrono::milliseconds timeout)
    : origin_override_(std::move(origin_override)), timeout_(timeout) {}

nlohmann::ordered_json HttpTransport::get(const HttpRequestSpec& request) {
  const UrlParts parts = split_url(request.url);
  const std::string origin = origin_override_ ? *origin_override_ : parts.origin();

  std::string failure;
  for (int attempt = 0; attempt < 2; ++attempt) {
    httplib::Client client(origin);
    client.set_url_encode(false);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);
    client.set_follow_location(true);
    auto res = client.Get(parts.target, {{"Accept", "application/json"}});
    if (!res) {
      failure = "GET " + request.url + ": " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      failure = "GET " + request.url + ": HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200)
      throw Error(ErrorCode::Transport, "GET " + request.url + ": HTTP " + std::to_string(res->status));
    auto body = nlohmann::ordered_json::parse(res->body, nullptr, false);
    if (body.is_discarded()) throw Error(ErrorCode::Transport, "GET " + request.url + ": response is not JSON");
    return body;
  }
  throw Error(ErrorCode::Transport, failure);
}

}  // namespace odcb
