// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <json.hpp>

#include "odcb/runtime/engine.hpp"
#include "odcb/runtime/mock_api.hpp"

namespace odcb {

/// Live conversations by id. Lookups may run concurrently; each session
/// is mutated under its own lock, so one conversation sees at most one
/// turn at a time while different conversations proceed in parallel.
class SessionStore {
 public:
  void put(Session session);
  // Runs `fn` on the locked session; false when the id is unknown.
  bool with_session(const std::string& id, const std::function<void(Session&)>& fn);
  std::size_t size() const;

 private:
  struct Entry {
    std::mutex mutex;
    Session session;
  };
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

std::chrono::year_month_day utc_today();

/// Exposed concept and fields of a bot, as served by GET /api/bot/meta.
nlohmann::ordered_json bot_meta(const BotDefinition& bot);

/// JSON chat API over a ChatEngine:
///   POST /api/sessions                 -> {sessionId, messages, buttons, table, state}
///   POST /api/sessions/{id}/messages   {"text"} -> {messages, buttons, table, state}
///   GET  /api/bot/meta
/// plus optional static files at "/".
class ChatService {
 public:
  struct Options {
    std::string host = "0.0.0.0";
    int port = 8080;  // 0 picks a free port
    std::optional<std::filesystem::path> staticDir;
    std::function<std::chrono::year_month_day()> today = utc_today;
  };

  ChatService(const ChatEngine& engine, Options options);
  ~ChatService();
  ChatService(const ChatService&) = delete;
  ChatService& operator=(const ChatService&) = delete;

  // Binds the socket and returns the port. Throws Error(Transport).
  int bind();
  // Serves until stop(); binds first when needed.
  void run();
  // run() on a background thread; returns the bound port.
  int start();
  void stop();

  SessionStore& sessions() noexcept { return store_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  SessionStore store_;
};

/// Serves a MockApi over HTTP for end-to-end tests and offline demos.
class MockApiServer {
 public:
  explicit MockApiServer(MockApi& api);
  ~MockApiServer();
  MockApiServer(const MockApiServer&) = delete;
  MockApiServer& operator=(const MockApiServer&) = delete;

  // Starts on a background thread; returns the port (0 = any free port).
  int start(const std::string& host = "127.0.0.1", int port = 0);
  void stop();
  // "http://127.0.0.1:<port>"
  std::string origin() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace odcb
