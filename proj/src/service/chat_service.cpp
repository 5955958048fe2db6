// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include <httplib.h>

#include "odcb/service/chat_service.hpp"

#include <thread>

#include "odcb/error.hpp"

namespace odcb {

void SessionStore::put(Session session) {
  auto entry = std::make_shared<Entry>();
  const std::string id = session.id;
  entry->session = std::move(session);
  std::unique_lock lock(mutex_);
  sessions_[id] = std::move(entry);
}

bool SessionStore::with_session(const std::string& id, const std::function<void(Session&)>& fn) {
  std::shared_ptr<Entry> entry;
  {
    std::shared_lock lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return false;
    entry = it->second;
  }
  std::lock_guard lock(entry->mutex);
  fn(entry->session);
  return true;
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

std::chrono::year_month_day utc_today() {
  return std::chrono::year_month_day{std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now())};
}

nlohmann::ordered_json bot_meta(const BotDefinition& bot) {
  nlohmann::ordered_json out;
  if (const ConceptClass* core = bot.model.core_concept())
    out["concept"] = {{"name", core->name}, {"readableName", core->bot.readableName}, {"synonyms", core->bot.synonyms}};
  out["fields"] = nlohmann::ordered_json::array();
  for (auto& path : exposed_leaves(bot.model)) {
    const PropertyDef* p = find_property(bot.model, path);
    nlohmann::ordered_json ops = nlohmann::ordered_json::array();
    for (auto op : operators_for(p->semanticType)) ops.push_back(to_string(op));
    out["fields"].push_back({{"path", path.str()},
                             {"readableName", p->bot.readableName},
                             {"synonyms", p->bot.synonyms},
                             {"type", to_string(p->semanticType)},
                             {"filterable", p->toFilterWith},
                             {"operators", ops}});
  }
  out["pageSize"] = bot.pageSize;
  return out;
}

namespace {

void send_json(httplib::Response& res, int status, const nlohmann::ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

nlohmann::ordered_json turn_json(const BotResponse& r, const Session& s) {
  auto j = response_to_json(r);
  j["state"] = to_string(s.state);
  return j;
}

}  // namespace

struct ChatService::Impl {
  const ChatEngine& engine;
  Options options;
  httplib::Server server;
  std::thread thread;
  int port = -1;
};

ChatService::ChatService(const ChatEngine& engine, Options options)
    : impl_(new Impl{engine, std::move(options), {}, {}, -1}) {
  auto& server = impl_->server;
  const ChatEngine& eng = engine;
  auto today = impl_->options.today;

  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/api/sessions", [this, &eng](const httplib::Request&, httplib::Response& res) {
    Session s = eng.create_session();
    auto body = turn_json(eng.welcome(s), s);
    nlohmann::ordered_json out = {{"sessionId", s.id}};
    out.update(body);
    store_.put(std::move(s));
    send_json(res, 201, out);
  });

  server.Post(R"(/api/sessions/([0-9A-Za-z_-]+)/messages)",
              [this, &eng, today](const httplib::Request& req, httplib::Response& res) {
                auto body = nlohmann::ordered_json::parse(req.body, nullptr, false);
                if (!body.is_object() || !body.contains("text") || !body["text"].is_string()) {
                  send_json(res, 400, {{"error", "body must be {\"text\": string}"}});
                  return;
                }
                const std::string text = body["text"].get<std::string>();
                nlohmann::ordered_json out;
                bool found = store_.with_session(req.matches[1].str(), [&](Session& s) {
                  Turn turn = eng.handle_message(s, text, today());
                  s = std::move(turn.session);
                  out = turn_json(turn.response, s);
                });
                if (!found) {
                  send_json(res, 404, {{"error", "unknown session"}});
                  return;
                }
                send_json(res, 200, out);
              });

  server.Get("/api/bot/meta",
             [&eng](const httplib::Request&, httplib::Response& res) { send_json(res, 200, bot_meta(eng.bot())); });

  if (impl_->options.staticDir) server.set_mount_point("/", impl_->options.staticDir->string());
}

ChatService::~ChatService() { stop(); }

int ChatService::bind() {
  if (impl_->port >= 0) return impl_->port;
  const auto& o = impl_->options;
  if (o.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(o.host);
  } else if (impl_->server.bind_to_port(o.host, o.port)) {
    impl_->port = o.port;
  }
  if (impl_->port <= 0) {
    impl_->port = -1;
    throw Error(ErrorCode::Transport, "cannot listen on " + o.host + ":" + std::to_string(o.port));
  }
  return impl_->port;
}

void ChatService::run() {
  bind();
  impl_->server.listen_after_bind();
}

int ChatService::start() {
  int port = bind();
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void ChatService::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

struct MockApiServer::Impl {
  MockApi& api;
  httplib::Server server;
  std::thread thread;
  int port = -1;
  std::string host;
};

MockApiServer::MockApiServer(MockApi& api) : impl_(new Impl{api, {}, {}, -1, {}}) {
  impl_->server.Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
    auto r = impl_->api.handle(req.target);
    send_json(res, r.status, r.body);
  });
}

MockApiServer::~MockApiServer() { stop(); }

int MockApiServer::start(const std::string& host, int port) {
  impl_->host = host;
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port(host);
  } else {
    impl_->port = impl_->server.bind_to_port(host, port) ? port : -1;
  }
  if (impl_->port <= 0) throw Error(ErrorCode::Transport, "mock API cannot listen on " + host);
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

void MockApiServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string MockApiServer::origin() const { return "http://" + impl_->host + ":" + std::to_string(impl_->port); }

}  // namespace odcb
