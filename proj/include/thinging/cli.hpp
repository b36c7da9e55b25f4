// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thinging::cli {

enum ExitCode : int { kSuccess = 0, kInvalidInput = 1, kUsage = 2, kSimulationFailed = 3 };

/// Runs one command line. `args` excludes the program name. Files named "-"
/// are read from `in`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in);

}  // namespace thinging::cli
