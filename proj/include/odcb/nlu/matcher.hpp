// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "odcb/botgen/bot_definition.hpp"
#include "odcb/nlu/value.hpp"

namespace odcb {

inline constexpr double kDefaultMatchThreshold = 0.8;

/// Result of recognizing one utterance. Value slots carry the raw span as
/// value::Text (quotes included); typing it is up to the caller, which
/// knows the field.
struct MatchedIntent {
  IntentKind kind = IntentKind::DirectSearch;
  std::map<std::string, Value> slots;
  double score = 0;
  std::string matchedTemplate;
};

/// Lowercase, trimmed, whitespace-collapsed, terminal . ! ? stripped.
std::string normalize_utterance(std::string_view utterance);

/// Deterministic template matcher over a bot's intents.
///
/// A template matches when its literal words line up with the utterance
/// and every slot takes a span: closed slots (field, operator, direction,
/// function) only spans that name a vocabulary entry, value slots any
/// span, a quoted string always being one token. Exact alignment scores
/// 1.0; otherwise the score is the literal overlap
///   2 * matched / (template literals + utterance words not taken by slots)
/// and anything under the threshold is dropped. A template with no literal
/// words scores 1.0 on exact alignment and 0 otherwise. Among candidates the
/// highest score wins, then the most literal characters, then the intent
/// kind that comes first, then the template that comes first.
class Matcher {
 public:
  explicit Matcher(const BotDefinition& bot, double threshold = kDefaultMatchThreshold);
  ~Matcher();
  Matcher(Matcher&&) noexcept;
  Matcher& operator=(Matcher&&) noexcept;

  // Throws Error(NoMatch) when no template in scope for `state` matches.
  MatchedIntent match(StateId state, std::string_view utterance) const;

  double threshold() const noexcept { return threshold_; }

 private:
  struct Compiled;
  std::unique_ptr<Compiled> compiled_;
  double threshold_;
};

MatchedIntent match(const BotDefinition& bot, StateId state, std::string_view utterance);

/// Maps a user phrase to the exposed leaf property it names, through the
/// readable name or any synonym, case-insensitively.
///
/// Throws Error(UnknownVocabulary) or Error(AmbiguousVocabulary).
PropertyPath resolve_vocabulary(const DataModel& model, std::string_view token);

}  // namespace odcb
