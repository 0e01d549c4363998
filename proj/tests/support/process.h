// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The skillgrep Authors

#pragma once

#include <string>
#include <vector>

namespace skillgrep::testing {

struct RunResult {
  int exit_code = -1;
  std::string out;  // stdout only
};

// Runs argv through the shell with stderr discarded.
RunResult run_command(const std::vector<std::string>& argv);

}  // namespace skillgrep::testing
