// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

// Query builders shared by the query, service and acceptance tests.

#pragma once

#include <random>

#include "fixture.h"
#include "skillgrep/query_engine.h"

namespace skillgrep::testing {

// python + scala, jquery, engineering, bachelor, revenue >= 1000, 50..200 staff.
Query query_one();

// The same query as CLI flags, after the subcommand.
std::vector<std::string> query_one_args();

// Conjunctive query over fixture values. Most queries are seeded from one
// posting so that result sets are usually non-empty.
Query random_query(std::mt19937& rng, const Fixture& f);

}  // namespace skillgrep::testing
