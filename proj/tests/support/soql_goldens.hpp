// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <string>
#include <vector>

#include "odcb/runtime/query.hpp"

namespace odcb::testing {

// A query over the refined air quality model and the request URL worked
// out by hand from the SoQL and percent-encoding rules.
struct SoqlGolden {
  std::string name;
  QuerySpec spec;
  int page = 0;
  std::string url;
};

std::vector<SoqlGolden> soql_goldens();

}  // namespace odcb::testing
