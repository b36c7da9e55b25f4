// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lexer.hpp"
#include "thinging/dsl.hpp"

namespace thinging::dsl {

struct PathAst {
  std::vector<std::string> names;
  /// Trailing stage keyword, if present.
  std::optional<std::string> stage;
  SourceSpan span;

  std::string text() const {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : ".") + n;
    if (stage) out += "." + *stage;
    return out;
  }
};

struct StageDecl {
  std::string kind;
  std::optional<int> annotation;
  SourceSpan span;
};

struct ThimacDecl {
  std::string name;
  std::optional<int> annotation;
  SourceSpan span;
  std::vector<StageDecl> stages;
  std::vector<ThimacDecl> children;
};

struct FlowStmt {
  std::vector<PathAst> paths;
  std::optional<int> annotation;
  SourceSpan span;
};

struct TriggerStmt {
  PathAst from;
  PathAst to;
  std::optional<int> annotation;
  SourceSpan span;
};

struct MemoryStmt {
  PathAst from;
  PathAst to;
  SourceSpan span;
};

struct EventDecl {
  std::string id;
  std::optional<std::string> label;
  std::vector<PathAst> region;
  std::optional<long long> repeat;
  std::optional<SourceSpan> repeat_span;
  std::vector<std::string> contains;
  SourceSpan span;
};

struct ChronoItem {
  std::string from;
  std::optional<std::string> to;
};

struct ChronoDecl {
  std::vector<ChronoItem> items;
  SourceSpan span;
};

using Item = std::variant<ThimacDecl, FlowStmt, TriggerStmt, MemoryStmt, EventDecl, ChronoDecl>;

/// Parses one token stream into items, appending diagnostics. Items that
/// failed to parse are dropped.
std::vector<Item> parse_items(const std::vector<Token>& tokens,
                              std::vector<Diagnostic>& diagnostics);

/// Resolves parsed items (from one or more files) into a model and behavior.
/// `diagnostics` holds what lexing and parsing already reported.
ParseResult lower(const std::vector<Item>& items, std::vector<Diagnostic> diagnostics);

}  // namespace thinging::dsl
