// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "thinging/diagnostic.hpp"

namespace thinging::dsl {

enum class TokenKind : std::uint8_t {
  Identifier,
  Keyword,
  StageWord,
  String,
  Integer,
  LBrace,
  RBrace,
  Semicolon,
  Dot,
  Comma,
  Arrow,     // ->
  Squiggle,  // ~>
  At,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  /// Identifier/keyword spelling, or the decoded string literal.
  std::string text;
  SourceSpan span;
};

/// Tokenizes `text`. Unrecognized characters and malformed literals are
/// reported as LEX_ERROR and skipped. The result always ends with an End
/// token.
std::vector<Token> lex(std::string_view text, std::string_view file,
                       std::vector<Diagnostic>& diagnostics);

std::string_view describe(TokenKind kind);

}  // namespace thinging::dsl
