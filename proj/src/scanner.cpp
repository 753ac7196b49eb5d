#include "tempoweave/detail/scanner.hpp"

#include "tempoweave/error.hpp"

#include <cctype>
#include <charconv>

namespace tempoweave::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::string describe(const Token& t) {
  return t.kind == TokenKind::End ? std::string("end of input") : "'" + t.text + "'";
}

} // namespace

std::vector<Token> scan(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, column = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n')
        advance(1);
      continue;
    }
    const std::size_t start = i, l = line, col = column;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j]))
        ++j;
      advance(j - i);
      out.push_back({TokenKind::Ident, std::string(text.substr(start, i - start)), l, col});
      continue;
    }
    if (digit(c)) {
      std::size_t j = i;
      while (j < text.size() && digit(text[j]))
        ++j;
      if (j + 1 < text.size() && text[j] == '.' && digit(text[j + 1])) {
        ++j;
        while (j < text.size() && digit(text[j]))
          ++j;
      }
      advance(j - i);
      out.push_back({TokenKind::Number, std::string(text.substr(start, i - start)), l, col});
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      advance(2);
      out.push_back({TokenKind::Punct, "->", l, col});
      continue;
    }
    if (std::string_view("{}():,=@.!").find(c) != std::string_view::npos) {
      advance(1);
      out.push_back({TokenKind::Punct, std::string(1, c), l, col});
      continue;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", l, col);
  }
  out.push_back({TokenKind::End, {}, line, column});
  return out;
}

const Token& TokenCursor::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

bool TokenCursor::is_word(std::string_view word, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Ident && t.text == word;
}

bool TokenCursor::is_punct(std::string_view p, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Punct && t.text == p;
}

std::string TokenCursor::ident(const char* what) {
  if (peek().kind != TokenKind::Ident)
    fail(std::string("expected ") + what + ", found " + describe(peek()));
  return take().text;
}

void TokenCursor::word(std::string_view word) {
  if (!is_word(word))
    fail("expected '" + std::string(word) + "', found " + describe(peek()));
  take();
}

void TokenCursor::punct(std::string_view p) {
  if (!is_punct(p))
    fail("expected '" + std::string(p) + "', found " + describe(peek()));
  take();
}

Time TokenCursor::number(const char* what) {
  if (peek().kind != TokenKind::Number)
    fail(std::string("expected ") + what + ", found " + describe(peek()));
  const Token& t = take();
  try {
    return Time::parse(t.text);
  } catch (const ParseError& e) {
    fail_at(t, e.what());
  }
}

std::size_t TokenCursor::integer(const char* what) {
  if (peek().kind != TokenKind::Number)
    fail(std::string("expected ") + what + ", found " + describe(peek()));
  const Token& t = take();
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc{} || ptr != t.text.data() + t.text.size())
    fail_at(t, std::string("expected ") + what + ", found '" + t.text + "'");
  return value;
}

void TokenCursor::fail(const std::string& message) const { fail_at(peek(), message); }

void TokenCursor::fail_at(const Token& t, const std::string& message) const {
  throw ParseError(message, t.line, t.column);
}

} // namespace tempoweave::detail
