// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

// Recursive descent over the token stream, one token of lookahead. A syntax
// error unwinds to the innermost statement list, which skips to the next
// ';' or '}' and carries on, so one pass reports every broken statement.

#include <charconv>
#include <limits>

#include "ast.hpp"

namespace thinging::dsl {

namespace {

struct SyntaxError {};

bool starts_item(const Token& t) {
  return t.kind == TokenKind::Keyword &&
         (t.text == "thimac" || t.text == "flow" || t.text == "trigger" || t.text == "event" ||
          t.text == "chronology" || t.text == "memory");
}

SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
  return SourceSpan{a.file, a.start_line, a.start_col, b.end_line, b.end_col};
}

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, std::vector<Diagnostic>& diagnostics)
      : tokens_(tokens), diagnostics_(diagnostics) {}

  std::vector<Item> items() {
    std::vector<Item> out;
    while (!at(TokenKind::End)) {
      const std::size_t start = pos_;
      try {
        out.push_back(item());
      } catch (const SyntaxError&) {
        recover_top_level(start);
      }
    }
    return out;
  }

 private:
  const Token& current() const { return tokens_[pos_]; }
  bool at(TokenKind kind) const { return current().kind == kind; }
  bool at_keyword(std::string_view word) const {
    return at(TokenKind::Keyword) && current().text == word;
  }

  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::End) ++pos_;
    return t;
  }

  [[noreturn]] void fail(std::string expected) {
    const Token& t = current();
    std::string found = std::string(describe(t.kind));
    if (!t.text.empty() && t.kind != TokenKind::String) found += " '" + t.text + "'";
    diagnostics_.push_back(Diagnostic{Severity::Error, std::string(codes::kSyntaxError),
                                      "expected " + expected + ", found " + found, t.span,
                                      std::nullopt});
    throw SyntaxError{};
  }

  const Token& expect(TokenKind kind) {
    if (!at(kind)) fail(std::string(describe(kind)));
    return advance();
  }

  const Token& expect_keyword(std::string_view word) {
    if (!at_keyword(word)) fail("'" + std::string(word) + "'");
    return advance();
  }

  bool accept(TokenKind kind) {
    if (!at(kind)) return false;
    advance();
    return true;
  }

  // Skips to just past the next ';' or stray '}' at nesting depth zero, or to
  // the next top-level keyword.
  void recover_top_level(std::size_t start) {
    if (pos_ == start) advance();
    int depth = 0;
    while (!at(TokenKind::End)) {
      if (depth == 0 && starts_item(current())) return;
      const TokenKind k = advance().kind;
      if (k == TokenKind::LBrace) {
        ++depth;
      } else if (k == TokenKind::RBrace) {
        if (depth == 0) return;
        if (--depth == 0 && starts_item(current())) return;
      } else if (k == TokenKind::Semicolon && depth == 0) {
        return;
      }
    }
  }

  // Inside a braced list: skips to just past the next ';' or up to (not past)
  // the closing '}'.
  void recover_in_block(std::size_t start) {
    if (pos_ == start && !at(TokenKind::RBrace)) advance();
    int depth = 0;
    while (!at(TokenKind::End)) {
      if (at(TokenKind::RBrace)) {
        if (depth == 0) return;
        --depth;
      } else if (at(TokenKind::LBrace)) {
        ++depth;
      } else if (at(TokenKind::Semicolon) && depth == 0) {
        advance();
        return;
      }
      advance();
    }
  }

  int integer(const Token& t) {
    int value = 0;
    const auto* first = t.text.data();
    const auto [ptr, ec] = std::from_chars(first, first + t.text.size(), value);
    if (ec != std::errc{} || ptr != first + t.text.size()) {
      diagnostics_.push_back(Diagnostic{Severity::Error, std::string(codes::kSyntaxError),
                                        "integer '" + t.text + "' is out of range", t.span,
                                        std::nullopt});
      throw SyntaxError{};
    }
    return value;
  }

  std::optional<int> annotation() {
    if (!accept(TokenKind::At)) return std::nullopt;
    return integer(expect(TokenKind::Integer));
  }

  Item item() {
    if (at_keyword("thimac")) return thimac();
    if (at_keyword("flow")) return flow();
    if (at_keyword("trigger")) return trigger();
    if (at_keyword("memory")) return memory();
    if (at_keyword("event")) return event();
    if (at_keyword("chronology")) return chronology();
    fail("'thimac', 'flow', 'trigger', 'event' or 'chronology'");
  }

  ThimacDecl thimac() {
    const Token& kw = expect_keyword("thimac");
    ThimacDecl decl;
    decl.name = expect(TokenKind::Identifier).text;
    decl.annotation = annotation();
    expect(TokenKind::LBrace);
    while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
      const std::size_t start = pos_;
      try {
        if (at_keyword("stage")) {
          decl.stages.push_back(stage());
        } else if (at_keyword("thimac")) {
          decl.children.push_back(thimac());
        } else {
          fail("'stage', 'thimac' or '}'");
        }
      } catch (const SyntaxError&) {
        recover_in_block(start);
      }
    }
    decl.span = join(kw.span, expect(TokenKind::RBrace).span);
    return decl;
  }

  StageDecl stage() {
    const Token& kw = expect_keyword("stage");
    StageDecl decl;
    decl.kind = expect(TokenKind::StageWord).text;
    decl.annotation = annotation();
    decl.span = join(kw.span, expect(TokenKind::Semicolon).span);
    return decl;
  }

  PathAst path() {
    PathAst p;
    const Token& first = expect(TokenKind::Identifier);
    p.names.push_back(first.text);
    p.span = first.span;
    while (accept(TokenKind::Dot)) {
      if (at(TokenKind::StageWord)) {
        const Token& s = advance();
        p.stage = s.text;
        p.span = join(p.span, s.span);
        break;
      }
      const Token& name = expect(TokenKind::Identifier);
      p.names.push_back(name.text);
      p.span = join(p.span, name.span);
    }
    return p;
  }

  FlowStmt flow() {
    const Token& kw = expect_keyword("flow");
    FlowStmt stmt;
    stmt.paths.push_back(path());
    do {
      expect(TokenKind::Arrow);
      stmt.paths.push_back(path());
    } while (at(TokenKind::Arrow));
    stmt.annotation = annotation();
    stmt.span = join(kw.span, expect(TokenKind::Semicolon).span);
    return stmt;
  }

  TriggerStmt trigger() {
    const Token& kw = expect_keyword("trigger");
    TriggerStmt stmt;
    stmt.from = path();
    expect(TokenKind::Squiggle);
    stmt.to = path();
    stmt.annotation = annotation();
    stmt.span = join(kw.span, expect(TokenKind::Semicolon).span);
    return stmt;
  }

  MemoryStmt memory() {
    const Token& kw = expect_keyword("memory");
    MemoryStmt stmt;
    stmt.from = path();
    if (!accept(TokenKind::Squiggle)) expect(TokenKind::Arrow);
    stmt.to = path();
    stmt.span = join(kw.span, expect(TokenKind::Semicolon).span);
    return stmt;
  }

  EventDecl event() {
    const Token& kw = expect_keyword("event");
    EventDecl decl;
    decl.id = expect(TokenKind::Identifier).text;
    if (at(TokenKind::String)) decl.label = advance().text;
    expect(TokenKind::LBrace);

    expect_keyword("region");
    expect(TokenKind::LBrace);
    while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
      const std::size_t start = pos_;
      try {
        decl.region.push_back(path());
        expect(TokenKind::Semicolon);
      } catch (const SyntaxError&) {
        recover_in_block(start);
      }
    }
    expect(TokenKind::RBrace);

    if (at_keyword("repeat")) {
      const Token& rk = advance();
      const Token& n = expect(TokenKind::Integer);
      long long value = 0;
      const auto [ptr, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), value);
      decl.repeat = ec == std::errc{} ? value : std::numeric_limits<long long>::max();
      decl.repeat_span = join(rk.span, n.span);
      expect(TokenKind::Semicolon);
    }
    if (at_keyword("contains")) {
      advance();
      decl.contains.push_back(expect(TokenKind::Identifier).text);
      while (accept(TokenKind::Comma)) decl.contains.push_back(expect(TokenKind::Identifier).text);
      expect(TokenKind::Semicolon);
    }
    decl.span = join(kw.span, expect(TokenKind::RBrace).span);
    return decl;
  }

  ChronoDecl chronology() {
    const Token& kw = expect_keyword("chronology");
    ChronoDecl decl;
    expect(TokenKind::LBrace);
    while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
      const std::size_t start = pos_;
      try {
        std::string from = expect(TokenKind::Identifier).text;
        if (!at(TokenKind::Arrow)) {
          decl.items.push_back({from, std::nullopt});
        }
        while (accept(TokenKind::Arrow)) {
          std::string to = expect(TokenKind::Identifier).text;
          decl.items.push_back({from, to});
          from = std::move(to);
        }
        expect(TokenKind::Semicolon);
      } catch (const SyntaxError&) {
        recover_in_block(start);
      }
    }
    decl.span = join(kw.span, expect(TokenKind::RBrace).span);
    return decl;
  }

  const std::vector<Token>& tokens_;
  std::vector<Diagnostic>& diagnostics_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Item> parse_items(const std::vector<Token>& tokens,
                              std::vector<Diagnostic>& diagnostics) {
  return Parser(tokens, diagnostics).items();
}

}  // namespace thinging::dsl
