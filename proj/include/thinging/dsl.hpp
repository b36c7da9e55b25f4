// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thinging/behavior.hpp"
#include "thinging/core.hpp"

namespace thinging {

/// Lowered model plus behavior. `model` is absent iff at least one
/// error-severity diagnostic exists.
struct ParseResult {
  std::optional<Model> model;
  std::vector<EventDef> events;
  std::optional<Chronology> chronology;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

struct SourceFile {
  std::string path;
  std::string text;
};

/// Parses one source text. Never throws on bad input: lexical, syntax and
/// resolution problems are reported as diagnostics, and parsing resumes at
/// the next statement boundary.
ParseResult parse(std::string_view text, std::string_view file = {});

/// Parses several files as one compilation unit: declarations in any file
/// are visible to statements in every other.
ParseResult parse_files(std::span<const SourceFile> files);

/// Canonical text. Declaration order, one statement per line, deterministic.
/// Throws std::invalid_argument when `result` has no model.
std::string format(const ParseResult& result);

/// JSON document with keys "thimacs", "flows", "triggers", "events",
/// "chronology" (see schemas/tm-model.schema.json). Compact unless `indent`
/// is non-negative. Throws std::invalid_argument when `result` has no model.
std::string to_json(const ParseResult& result, int indent = -1);

/// Inverse of to_json up to model_equal. Schema violations become
/// diagnostics.
ParseResult from_json(std::string_view text, std::string_view file = {});

}  // namespace thinging
