// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <json.hpp>

#include "odcb/botgen/bot_definition.hpp"

namespace odcb {

nlohmann::ordered_json lexicon_to_json(const Lexicon& lex);
Lexicon lexicon_from_json(const nlohmann::ordered_json& lex);

}  // namespace odcb
