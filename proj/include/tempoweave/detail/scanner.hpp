#pragma once

#include "tempoweave/time.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tempoweave::detail {

enum class TokenKind { Ident, Number, Punct, End };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

/// Tokenizer shared by the scenario, bindings and schedule formats.
/// Identifiers are `[A-Za-z_][A-Za-z0-9_]*`, numbers are unsigned decimals,
/// punctuation is any of `{}():,=@.!` or `->`. `#` starts a line comment.
std::vector<Token> scan(std::string_view text);

/// Cursor over a token stream that throws ParseError with positions.
class TokenCursor {
public:
  explicit TokenCursor(std::string_view text) : tokens_(scan(text)) {}

  const Token& peek(std::size_t ahead = 0) const;
  bool at_end() const { return peek().kind == TokenKind::End; }
  bool is_word(std::string_view word, std::size_t ahead = 0) const;
  bool is_punct(std::string_view p, std::size_t ahead = 0) const;

  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  std::string ident(const char* what);
  void word(std::string_view word);
  void punct(std::string_view p);
  Time number(const char* what);
  std::size_t integer(const char* what);

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(const Token& t, const std::string& message) const;

private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

} // namespace tempoweave::detail
