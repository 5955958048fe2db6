// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "odcb/model/data_model.hpp"

namespace odcb {

/// Fills unset Bot annotations: an element whose readableName is empty
/// becomes exposed, named humanize(name), with no synonyms. Elements that
/// already carry a readable name are left alone, so applying twice is the
/// same as applying once.
DataModel apply_default_annotations(const DataModel& model);

namespace change {
struct ToExpose { bool value; };
struct ReadableName { std::string value; };
struct AddSynonym { std::string value; };
struct RemoveSynonym { std::string value; };
struct ToFilterWith { bool value; };
}  // namespace change

using AnnotationChange =
    std::variant<change::ToExpose, change::ReadableName, change::AddSynonym, change::RemoveSynonym, change::ToFilterWith>;

/// Applies one annotation change to the concept or property at `path`.
/// Synonyms are stored lowercase. Throws Error(UnknownPath) when the path
/// does not resolve and Error(InvariantViolation) when the result would
/// not validate.
DataModel set_annotation(const DataModel& model, const ElementPath& path, const AnnotationChange& change);

/// Replaces the source field a leaf property is bound to. Throws
/// Error(UnknownPath), Error(CompositeProperty) or
/// Error(InvariantViolation) for an empty field name.
DataModel set_binding(const DataModel& model, const ElementPath& path, const std::string& field_name);

/// One line of a refinement script: {"op", "path", "value"}.
///
///   op            path                value
///   toExpose      Concept[.property]  bool
///   readableName  Concept[.property]  string
///   addSynonym    Concept[.property]  string
///   removeSynonym Concept[.property]  string
///   toFilterWith  Concept.property    bool
///   setBinding    Concept.property    string (source field name)
///   normalize     NewConceptName      array of core property names
struct RefinementCommand {
  std::string op;
  std::string path;
  nlohmann::ordered_json value;
};

// Throws Error(MalformedDocument) when the script is not an array of
// well-formed commands.
std::vector<RefinementCommand> parse_refinement_script(const nlohmann::ordered_json& script);

/// Replays the commands in order. Any failing command aborts the replay
/// with its typed error; the message names the command index.
DataModel apply_refinements(const DataModel& model, const std::vector<RefinementCommand>& commands);

}  // namespace odcb
