// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "odcb/botgen/bot_definition.hpp"

namespace odcb {

inline constexpr int kDefaultPageSize = 10;

/// Builds the bot for the model's core concept: one IntentTemplate per
/// intent kind plus the guided-conversation state machine. The embedded
/// model is the exposed projection, so hidden elements never reach the bot.
///
/// Throws Error(InvariantViolation) for an invalid model,
/// Error(NoExposedConcept) when the core concept is hidden and
/// Error(NoExposedProperties) when it exposes no leaf property.
BotDefinition generate_bot(const DataModel& model, const TemplatePack& pack = TemplatePack::defaults(),
                           int page_size = kDefaultPageSize);

/// Conversation graph. With no filterable property, GuidedSearch skips the
/// filter loop and goes straight to field selection.
StateMachine build_state_machine(const DataModel& model);

/// Concrete training sentences of one intent: every template instantiated
/// over the field, operator, direction and function vocabularies, value
/// slots kept as "{value}". Lowercase, deduplicated, stable order.
std::vector<std::string> expand_templates(const BotDefinition& bot, IntentKind kind);
std::vector<std::string> expand_templates(IntentKind kind, const DataModel& model);

/// Invariant check on a bot definition; returns one line per violation.
std::vector<std::string> check_bot(const BotDefinition& bot);

/// bot.json. Expanded training sentences are written for readers and
/// ignored on load.
nlohmann::ordered_json bot_to_json(const BotDefinition& bot);
BotDefinition bot_from_json(const nlohmann::ordered_json& doc);

}  // namespace odcb
