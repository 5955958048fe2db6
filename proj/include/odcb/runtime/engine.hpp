// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odcb/botgen/bot_definition.hpp"
#include "odcb/nlu/matcher.hpp"
#include "odcb/runtime/post_ops.hpp"
#include "odcb/runtime/query.hpp"
#include "odcb/runtime/render.hpp"
#include "odcb/runtime/transport.hpp"

namespace odcb {

// Field and operator picked so far while the user builds a guided filter.
struct PendingFilter {
  std::optional<PropertyPath> field;
  std::optional<Operator> op;

  bool operator==(const PendingFilter&) const = default;
};

struct Session {
  std::string id;
  StateId state = StateId::Idle;
  QuerySpec spec;
  int page = 0;
  std::vector<Row> lastRows;
  bool morePages = false;
  PendingFilter pending;
};

struct Turn {
  Session session;
  BotResponse response;
};

using Logger = std::function<void(std::string_view)>;

// Writes to stderr.
Logger stderr_logger();

/// Runs conversations for one bot. Sessions are values: handle_message
/// returns the next session rather than mutating its argument, so a turn
/// that fails (unparsable value, transport error) leaves the caller's
/// session untouched. Safe to share across threads when the transport is.
class ChatEngine {
 public:
  // Largest row window fetched for client-side sorting, filtering or
  // aggregation.
  static constexpr std::size_t kClientWindow = 10000;

  ChatEngine(BotDefinition bot, Transport& transport, Logger logger = stderr_logger());

  const BotDefinition& bot() const noexcept { return bot_; }

  Session create_session() const;

  // Opening message for a fresh session.
  BotResponse welcome(const Session& session) const;

  Turn handle_message(const Session& session, std::string_view utterance, std::chrono::year_month_day today) const;

  // Quick replies offered in the session's current state.
  std::vector<std::string> buttons_for(const Session& session) const;

 private:
  std::string readable(const PropertyPath& path) const;
  std::string operator_label(Operator op) const;
  std::string concept_phrase() const;
  BotResponse help(const Session& session, std::string_view lead) const;

  void run_action(const Transition& t, const MatchedIntent& m, Session& s, BotResponse& r,
                  std::chrono::year_month_day today) const;
  Filter make_filter(const Session& s, const PropertyPath& field, Operator op, const Value& raw,
                     std::chrono::year_month_day today) const;
  void execute(Session& s, BotResponse& r) const;
  void aggregate(const Session& s, const Aggregation& agg, BotResponse& r) const;
  std::vector<Row> fetch(const QuerySpec& spec, int page, std::optional<std::size_t>* total) const;

  BotDefinition bot_;
  Matcher matcher_;
  Transport& transport_;
  Logger log_;
  std::map<IntentKind, std::string> examples_;
};

}  // namespace odcb
