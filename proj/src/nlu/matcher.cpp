// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/nlu/matcher.hpp"

#include <algorithm>
#include <optional>

#include "odcb/botgen/template_syntax.hpp"
#include "odcb/error.hpp"
#include "odcb/model/text.hpp"

namespace odcb {

namespace {

struct Token {
  std::string folded;    // lowercase; quotes removed for quoted tokens
  std::string original;  // as typed, quotes kept
  bool quoted = false;
};

std::string strip_terminal_punctuation(std::string s) {
  while (!s.empty() && (s.back() == '.' || s.back() == '!' || s.back() == '?' || s.back() == ' ')) s.pop_back();
  return s;
}

std::vector<Token> tokenize(std::string_view utterance) {
  const std::string s = strip_terminal_punctuation(text::trim(utterance));
  std::vector<Token> out;
  size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (i < s.size()) {
    if (is_space(s[i])) {
      ++i;
      continue;
    }
    if (s[i] == '"') {
      size_t close = s.find('"', i + 1);
      size_t end = close == std::string::npos ? s.size() : close + 1;
      std::string original = s.substr(i, end - i);
      std::string inner = s.substr(i + 1, (close == std::string::npos ? s.size() : close) - i - 1);
      out.push_back({text::to_lower(text::join(text::split_words(inner), " ")), original, true});
      i = end;
      continue;
    }
    size_t end = i;
    while (end < s.size() && !is_space(s[end]) && s[end] != '"') ++end;
    std::string word = s.substr(i, end - i);
    out.push_back({text::to_lower(word), word, false});
    i = end;
  }
  return out;
}

struct Segment {
  bool slot = false;
  std::string text;  // literal word or slot name
  SlotFill fill = SlotFill::Value;
};

struct CompiledTemplate {
  std::string source;
  std::vector<Segment> segments;
  int literals = 0;
  size_t literalChars = 0;
};

struct CompiledIntent {
  IntentKind kind;
  std::vector<StateId> allowed;
  std::vector<CompiledTemplate> templates;
  std::map<std::string, std::vector<PropertyPath>> fields;
};

struct Alignment {
  int matched = 0;
  int skippedUtterance = 0;
  int skippedTemplate = 0;
  std::vector<std::pair<std::string, Value>> slots;

  bool better_than(const Alignment& o) const {
    if (matched != o.matched) return matched > o.matched;
    if (skippedUtterance != o.skippedUtterance) return skippedUtterance < o.skippedUtterance;
    return skippedTemplate < o.skippedTemplate;
  }
};

}  // namespace

struct Matcher::Compiled {
  std::vector<CompiledIntent> intents;
  std::map<std::string, Operator> operators;
  std::map<std::string, SortDirection> directions;
  std::map<std::string, AggFunction> functions;

  std::optional<Value> fill_slot(const CompiledIntent& intent, const Segment& seg, const std::vector<Token>& toks,
                                 size_t from, size_t count) const {
    if (seg.fill == SlotFill::Value) {
      if (count > 1)
        for (size_t k = from; k < from + count; ++k)
          if (toks[k].quoted) return std::nullopt;
      std::vector<std::string> words;
      for (size_t k = from; k < from + count; ++k) words.push_back(toks[k].original);
      return value::Text{text::join(words, " ")};
    }
    std::vector<std::string> words;
    for (size_t k = from; k < from + count; ++k) words.push_back(toks[k].folded);
    const std::string phrase = text::join(words, " ");
    switch (seg.fill) {
      case SlotFill::FieldRef: {
        auto it = intent.fields.find(phrase);
        if (it == intent.fields.end() || it->second.size() != 1) return std::nullopt;
        return it->second.front();
      }
      case SlotFill::Operator:
        if (auto it = operators.find(phrase); it != operators.end()) return it->second;
        return std::nullopt;
      case SlotFill::SortDirection:
        if (auto it = directions.find(phrase); it != directions.end()) return it->second;
        return std::nullopt;
      case SlotFill::AggFunction:
        if (auto it = functions.find(phrase); it != functions.end()) return it->second;
        return std::nullopt;
      case SlotFill::Value:
        break;
    }
    return std::nullopt;
  }

  // Best alignment of a template against the tokens; memoized on (segment, token).
  std::optional<Alignment> align(const CompiledIntent& intent, const CompiledTemplate& tmpl,
                                 const std::vector<Token>& toks) const {
    const size_t n = tmpl.segments.size(), m = toks.size();
    std::vector<std::optional<std::optional<Alignment>>> memo((n + 1) * (m + 1));

    auto solve = [&](auto&& self, size_t i, size_t j) -> const std::optional<Alignment>& {
      auto& cell = memo[i * (m + 1) + j];
      if (cell) return *cell;
      std::optional<Alignment> best;
      auto offer = [&](std::optional<Alignment> cand) {
        if (cand && (!best || cand->better_than(*best))) best = std::move(cand);
      };

      if (i == n) {
        Alignment a;
        a.skippedUtterance = static_cast<int>(m - j);
        offer(a);
      } else {
        const Segment& seg = tmpl.segments[i];
        if (!seg.slot) {
          if (j < m && !toks[j].quoted && toks[j].folded == seg.text) {
            if (const auto& sub = self(self, i + 1, j + 1)) {
              Alignment a = *sub;
              ++a.matched;
              offer(std::move(a));
            }
          }
          if (const auto& sub = self(self, i + 1, j)) {
            Alignment a = *sub;
            ++a.skippedTemplate;
            offer(std::move(a));
          }
        } else {
          for (size_t k = m - j; k >= 1; --k) {
            auto v = fill_slot(intent, seg, toks, j, k);
            if (!v) continue;
            if (const auto& sub = self(self, i + 1, j + k)) {
              Alignment a = *sub;
              a.slots.insert(a.slots.begin(), {seg.text, std::move(*v)});
              offer(std::move(a));
            }
          }
        }
        if (j < m) {
          if (const auto& sub = self(self, i, j + 1)) {
            Alignment a = *sub;
            ++a.skippedUtterance;
            offer(std::move(a));
          }
        }
      }
      cell = std::move(best);
      return *cell;
    };
    return solve(solve, 0, 0);
  }
};

Matcher::Matcher(const BotDefinition& bot, double threshold)
    : compiled_(std::make_unique<Compiled>()), threshold_(threshold) {
  for (auto& [op, forms] : bot.lexicon.operators)
    for (auto& f : forms) compiled_->operators.emplace(text::to_lower(f), op);
  for (auto& [dir, forms] : bot.lexicon.directions)
    for (auto& f : forms) compiled_->directions.emplace(text::to_lower(f), dir);
  for (auto& [fn, forms] : bot.lexicon.functions)
    for (auto& f : forms) compiled_->functions.emplace(text::to_lower(f), fn);

  for (auto kind : kAllIntentKinds) {
    const auto* intent = bot.intent(kind);
    if (!intent) continue;
    CompiledIntent ci{kind, intent->allowedStates, {}, {}};
    for (auto& path : field_domain(kind, bot.model)) {
      for (auto& phrase : element_phrases(find_property(bot.model, path)->bot)) {
        auto& paths = ci.fields[phrase];
        if (std::find(paths.begin(), paths.end(), path) == paths.end()) paths.push_back(path);
      }
    }
    for (auto& source : intent->trainingTemplates) {
      CompiledTemplate ct;
      ct.source = source;
      for (auto& w : parse_template(source)) {
        if (w.slot) {
          ct.segments.push_back({true, w.text, fill_for_slot(w.text).value_or(SlotFill::Value)});
        } else {
          ct.segments.push_back({false, w.text, SlotFill::Value});
          ++ct.literals;
          ct.literalChars += w.text.size();
        }
      }
      ci.templates.push_back(std::move(ct));
    }
    compiled_->intents.push_back(std::move(ci));
  }
}

Matcher::~Matcher() = default;
Matcher::Matcher(Matcher&&) noexcept = default;
Matcher& Matcher::operator=(Matcher&&) noexcept = default;

MatchedIntent Matcher::match(StateId state, std::string_view utterance) const {
  const auto toks = tokenize(utterance);
  if (toks.empty()) throw Error(ErrorCode::NoMatch, "empty utterance");

  std::optional<MatchedIntent> best;
  size_t best_chars = 0;
  for (auto& intent : compiled_->intents) {
    if (std::find(intent.allowed.begin(), intent.allowed.end(), state) == intent.allowed.end()) continue;
    for (auto& tmpl : intent.templates) {
      auto a = compiled_->align(intent, tmpl, toks);
      if (!a) continue;
      double score;
      if (tmpl.literals == 0)
        score = a->skippedUtterance == 0 ? 1.0 : 0.0;
      else
        score = 2.0 * a->matched / (tmpl.literals + a->matched + a->skippedUtterance);
      if (score < threshold_) continue;
      if (best && (score < best->score || (score == best->score && tmpl.literalChars <= best_chars))) continue;
      MatchedIntent m;
      m.kind = intent.kind;
      m.score = score;
      m.matchedTemplate = tmpl.source;
      for (auto& [name, v] : a->slots) m.slots.insert_or_assign(name, v);
      best = std::move(m);
      best_chars = tmpl.literalChars;
    }
  }
  if (!best)
    throw Error(ErrorCode::NoMatch, "'" + std::string(utterance) + "' matches nothing in state " + std::string(to_string(state)));
  return *best;
}

MatchedIntent match(const BotDefinition& bot, StateId state, std::string_view utterance) {
  return Matcher(bot).match(state, utterance);
}

std::string normalize_utterance(std::string_view utterance) {
  return text::to_lower(text::join(text::split_words(strip_terminal_punctuation(text::trim(utterance))), " "));
}

PropertyPath resolve_vocabulary(const DataModel& model, std::string_view token) {
  const std::string phrase = text::to_lower(text::join(text::split_words(token), " "));
  std::vector<PropertyPath> hits;
  for (auto& path : exposed_leaves(model)) {
    auto phrases = element_phrases(find_property(model, path)->bot);
    if (std::find(phrases.begin(), phrases.end(), phrase) != phrases.end()) hits.push_back(path);
  }
  if (hits.empty()) throw Error(ErrorCode::UnknownVocabulary, "no exposed element is called '" + phrase + "'");
  if (hits.size() > 1) {
    std::string names;
    for (auto& h : hits) names += (names.empty() ? "" : ", ") + h.str();
    throw Error(ErrorCode::AmbiguousVocabulary, "'" + phrase + "' names several elements: " + names);
  }
  return hits.front();
}

}  // namespace odcb
