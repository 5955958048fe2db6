// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <string>
#include <vector>

#include "odcb/model/data_model.hpp"

namespace odcb {

struct Grouping {
  std::string conceptName;
  std::vector<std::string> properties;  // names on the core concept
};

/// Moves each group of core properties into a new non-core concept and
/// gives the core a Composite property (named after the concept with a
/// lowercase first letter) pointing at it. Bindings move verbatim.
///
/// Throws Error(UnknownProperty) when a listed property is not a leaf of
/// the core concept, Error(NameCollision) when a concept or composite
/// property name is already taken or a property is listed twice.
DataModel normalize(const DataModel& model, const std::vector<Grouping>& groupings);

}  // namespace odcb
