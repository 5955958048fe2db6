// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "odcb/model/data_model.hpp"

namespace odcb {

// Versioned JSON model document. Top-level keys: name, version, binding, concepts.
nlohmann::ordered_json persist(const DataModel& model);

// Throws Error(MalformedDocument) on shape errors and
// Error(SchemaVersionMismatch) when version != kModelSchemaVersion.
DataModel restore(const nlohmann::ordered_json& document);

// Text forms. persist_text is stable: same model, same bytes.
std::string persist_text(const DataModel& model);
DataModel restore_text(std::string_view text);

}  // namespace odcb
