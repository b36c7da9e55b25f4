// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include "lexer.hpp"

#include <array>

namespace thinging::dsl {

namespace {

constexpr std::array kKeywords = {"thimac", "stage",   "flow",       "trigger", "event",
                                  "region", "repeat",  "contains",   "chronology",
                                  "memory"};
constexpr std::array kStageWords = {"create",  "process", "release", "transfer",
                                    "receive", "arrive",  "accept"};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view text, std::string_view file, std::vector<Diagnostic>& diagnostics)
      : text_(text), file_(file), diagnostics_(diagnostics) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    for (;;) {
      skip_trivia();
      if (at_end()) break;
      if (auto token = next()) tokens.push_back(std::move(*token));
    }
    tokens.push_back(Token{TokenKind::End, {}, span_from(line_, col_)});
    return tokens;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      // UTF-8 continuation bytes do not start a new column.
      ++col_;
    }
    last_line_ = line_;
    last_col_ = col_ - 1;
  }

  SourceSpan span_from(int line, int col) const {
    SourceSpan s{std::string(file_), line, col, line, col};
    if (last_line_ > line || (last_line_ == line && last_col_ >= col)) {
      s.end_line = last_line_;
      s.end_col = last_col_;
    }
    return s;
  }

  void error(int line, int col, std::string message) {
    diagnostics_.push_back(Diagnostic{Severity::Error, std::string(codes::kLexError),
                                      std::move(message), span_from(line, col), std::nullopt});
  }

  void skip_trivia() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        const int line = line_, col = col_;
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
        if (at_end()) {
          error(line, col, "unterminated block comment");
          return;
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  std::optional<Token> next() {
    const int line = line_, col = col_;
    const char c = peek();
    auto single = [&](TokenKind kind, std::size_t length) {
      std::string text(text_.substr(pos_, length));
      for (std::size_t i = 0; i < length; ++i) advance();
      return Token{kind, std::move(text), span_from(line, col)};
    };

    if (is_alpha(c)) {
      const std::size_t start = pos_;
      while (!at_end() && (is_alpha(peek()) || is_digit(peek()) || peek() == '_')) advance();
      std::string word(text_.substr(start, pos_ - start));
      TokenKind kind = TokenKind::Identifier;
      for (const char* k : kKeywords) {
        if (word == k) kind = TokenKind::Keyword;
      }
      for (const char* k : kStageWords) {
        if (word == k) kind = TokenKind::StageWord;
      }
      return Token{kind, std::move(word), span_from(line, col)};
    }
    if (is_digit(c)) {
      const std::size_t start = pos_;
      while (!at_end() && is_digit(peek())) advance();
      return Token{TokenKind::Integer, std::string(text_.substr(start, pos_ - start)),
                   span_from(line, col)};
    }
    switch (c) {
      case '{': return single(TokenKind::LBrace, 1);
      case '}': return single(TokenKind::RBrace, 1);
      case ';': return single(TokenKind::Semicolon, 1);
      case '.': return single(TokenKind::Dot, 1);
      case ',': return single(TokenKind::Comma, 1);
      case '@': return single(TokenKind::At, 1);
      case '"': return string_literal(line, col);
      default: break;
    }
    if (c == '-' && peek(1) == '>') return single(TokenKind::Arrow, 2);
    if (c == '~' && peek(1) == '>') return single(TokenKind::Squiggle, 2);

    advance();
    while (!at_end() && (static_cast<unsigned char>(peek()) & 0xC0) == 0x80) advance();
    error(line, col, "unexpected character");
    return std::nullopt;
  }

  std::optional<Token> string_literal(int line, int col) {
    advance();  // opening quote
    std::string value;
    while (!at_end() && peek() != '"' && peek() != '\n') {
      if (peek() == '\\') {
        advance();
        if (at_end()) break;
        const char e = peek();
        advance();
        switch (e) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          default:
            error(line_, col_ - 1, std::string("unknown escape '\\") + e + "'");
            value += e;
        }
        continue;
      }
      value += peek();
      advance();
    }
    if (at_end() || peek() != '"') {
      error(line, col, "unterminated string literal");
      return std::nullopt;
    }
    advance();
    return Token{TokenKind::String, std::move(value), span_from(line, col)};
  }

  std::string_view text_;
  std::string_view file_;
  std::vector<Diagnostic>& diagnostics_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int last_line_ = 1;
  int last_col_ = 0;
};

}  // namespace

std::vector<Token> lex(std::string_view text, std::string_view file,
                       std::vector<Diagnostic>& diagnostics) {
  return Lexer(text, file, diagnostics).run();
}

std::string_view describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::StageWord: return "stage keyword";
    case TokenKind::String: return "string";
    case TokenKind::Integer: return "integer";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Comma: return "','";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::Squiggle: return "'~>'";
    case TokenKind::At: return "'@'";
    case TokenKind::End: return "end of input";
  }
  return "token";
}

}  // namespace thinging::dsl
