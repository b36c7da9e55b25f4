// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "thinging/dsl.hpp"
#include "thinging/validate.hpp"

namespace thinging {

/// Output of parse -> normalize -> remap regions -> validate.
struct Compilation {
  /// Normalized model with remapped event regions. Absent when parsing
  /// failed.
  std::optional<ParseResult> program;
  /// Parser diagnostics followed by validator diagnostics, each group sorted.
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return program.has_value() && !has_errors(diagnostics); }
};

Compilation compile(std::span<const SourceFile> files, const ValidateOptions& options = {});

/// Same pipeline starting from an already parsed program.
Compilation compile(ParseResult parsed, const ValidateOptions& options = {});

}  // namespace thinging
