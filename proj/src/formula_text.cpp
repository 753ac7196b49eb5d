#include "tempoweave/formula_text.hpp"

#include "tempoweave/error.hpp"

#include <array>
#include <cctype>
#include <optional>

namespace tempoweave {

namespace {

constexpr std::array<std::string_view, 8> kReserved = {"X", "WX", "F", "G", "U", "within", "true", "false"};

enum class Tok {
  Ident,
  Number,
  At,
  Colon,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Bang,
  Amp,
  Bar,
  Arrow,
  Dot,
  End,
};

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      const std::size_t line = line_, column = column_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, {}, line, column});
        return out;
      }
      const char c = src_[pos_];
      const std::size_t start = pos_;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance();
        out.push_back({Tok::Ident, src_.substr(start, pos_ - start), line, column});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
          advance();
        if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
            std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
          advance();
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            advance();
        }
        out.push_back({Tok::Number, src_.substr(start, pos_ - start), line, column});
        continue;
      }
      Tok kind;
      std::size_t width = 1;
      switch (c) {
      case '@':
        kind = Tok::At;
        break;
      case ':':
        kind = Tok::Colon;
        break;
      case '(':
        kind = Tok::LParen;
        break;
      case ')':
        kind = Tok::RParen;
        break;
      case '[':
        kind = Tok::LBracket;
        break;
      case ']':
        kind = Tok::RBracket;
        break;
      case ',':
        kind = Tok::Comma;
        break;
      case '!':
        kind = Tok::Bang;
        break;
      case '&':
        kind = Tok::Amp;
        break;
      case '|':
        kind = Tok::Bar;
        break;
      case '.':
        kind = Tok::Dot;
        break;
      case '-':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
          kind = Tok::Arrow;
          width = 2;
          break;
        }
        [[fallthrough]];
      default:
        throw ParseError("unknown operator token '" + std::string(1, c) + "'", line, column);
      }
      for (std::size_t i = 0; i < width; ++i)
        advance();
      out.push_back({kind, src_.substr(start, width), line, column});
    }
  }

private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End)
    return "end of input";
  return "'" + std::string(t.text) + "'";
}

class Parser {
public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  Property property() {
    expect(Tok::At, "'@' starting the agent annotation");
    const std::string agent = identifier("agent name");
    expect(Tok::Colon, "':' after the agent annotation");
    Formula body = formula();
    expect(Tok::End, "end of input");
    return {agent, std::move(body)};
  }

  Formula bare() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }
  bool peek_keyword(std::string_view word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw ParseError(message, at.line, at.column);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      fail(peek(), std::string("expected ") + what + ", found " + describe(peek()));
    return take();
  }

  std::string identifier(const char* what) {
    const Token& t = expect(Tok::Ident, what);
    if (is_reserved_word(t.text))
      fail(t, "reserved word '" + std::string(t.text) + "' cannot be used as " + what);
    return std::string(t.text);
  }

  Formula formula() { return implies(); }

  Formula implies() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Arrow) {
      take();
      return Formula::implication(std::move(lhs), implies());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (peek().kind == Tok::Bar) {
      take();
      lhs = Formula::disjunction(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = until();
    while (peek().kind == Tok::Amp) {
      take();
      lhs = Formula::conjunction(std::move(lhs), until());
    }
    return lhs;
  }

  Formula until() {
    Formula lhs = unary();
    if (peek_keyword("U")) {
      take();
      return Formula::until(std::move(lhs), until());
    }
    return lhs;
  }

  Formula unary() {
    const Token& t = peek();
    if (t.kind == Tok::Bang) {
      take();
      return Formula::negation(unary());
    }
    if (t.kind == Tok::LParen) {
      take();
      Formula inner = formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::At)
      return Formula::atom(atom());
    if (t.kind != Tok::Ident)
      fail(t, "expected a formula, found " + describe(t));

    if (t.text == "X") {
      take();
      return Formula::next(unary());
    }
    if (t.text == "WX") {
      take();
      return Formula::weak_next(unary());
    }
    if (t.text == "F") {
      take();
      return Formula::finally(unary());
    }
    if (t.text == "G") {
      take();
      return Formula::globally(unary());
    }
    if (t.text == "true") {
      take();
      return Formula::constant(true);
    }
    if (t.text == "false") {
      take();
      return Formula::constant(false);
    }
    if (t.text == "within")
      return prophecy();
    if (t.text == "U")
      fail(t, "'U' is a binary operator and needs a left operand");
    return Formula::atom(atom());
  }

  Formula prophecy() {
    const Token& kw = take();
    expect(Tok::LBracket, "'[' after 'within'");
    const Time lower = number();
    expect(Tok::Comma, "',' between prophecy bounds");
    const Time upper = number();
    expect(Tok::RBracket, "']' closing the prophecy bounds");
    Polarity polarity = Polarity::Positive;
    if (peek().kind == Tok::Bang) {
      take();
      polarity = Polarity::Negated;
    }
    if (!(lower < upper))
      fail(kw, "prophecy bounds must satisfy lower < upper, got [" + lower.to_string() + "," +
                   upper.to_string() + "]");
    return Formula::prophecy(lower, upper, atom(), polarity);
  }

  Time number() {
    const Token& t = expect(Tok::Number, "a non-negative number");
    try {
      return Time::parse(t.text);
    } catch (const ParseError& e) {
      fail(t, e.what());
    }
  }

  AtomRef atom() {
    if (peek().kind == Tok::At) {
      const Token& at = take();
      std::string agent = identifier("agent name");
      if (peek().kind == Tok::Colon)
        fail(at, "nested '@' annotations are only allowed on atomic propositions (@Agent.prop)");
      expect(Tok::Dot, "'.' in remote proposition @Agent.prop");
      std::string name = identifier("proposition name");
      return {std::move(agent), std::move(name)};
    }
    return {{}, identifier("proposition name")};
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

int precedence(FormulaKind k) {
  switch (k) {
  case FormulaKind::Implies:
    return 1;
  case FormulaKind::Or:
    return 2;
  case FormulaKind::And:
    return 3;
  case FormulaKind::Until:
    return 4;
  case FormulaKind::Not:
  case FormulaKind::Next:
  case FormulaKind::WeakNext:
  case FormulaKind::Finally:
  case FormulaKind::Globally:
    return 5;
  default:
    return 6;
  }
}

bool is_binary(FormulaKind k) { return precedence(k) <= 4; }
bool right_associative(FormulaKind k) { return k == FormulaKind::Implies || k == FormulaKind::Until; }

class Printer {
public:
  explicit Printer(PrintMode mode) : mode_(mode) {}

  void print(const Formula& f) {
    using K = FormulaKind;
    switch (f.kind()) {
    case K::Atom:
    case K::RemoteAtom:
      atom(f.atom_ref());
      return;
    case K::True:
      out_ += "true";
      return;
    case K::False:
      out_ += "false";
      return;
    case K::Not:
      out_ += '!';
      operand(f.child());
      return;
    case K::Next:
      out_ += "X ";
      operand(f.child());
      return;
    case K::WeakNext:
      out_ += "WX ";
      operand(f.child());
      return;
    case K::Finally:
      out_ += "F ";
      operand(f.child());
      return;
    case K::Globally:
      out_ += "G ";
      operand(f.child());
      return;
    case K::Or:
      binary(f, " | ");
      return;
    case K::And:
      binary(f, " & ");
      return;
    case K::Implies:
      binary(f, " -> ");
      return;
    case K::Until:
      binary(f, " U ");
      return;
    case K::Prophecy:
      prophecy(f, "within[");
      return;
    case K::ActiveProphecy:
      require_extended(f);
      prophecy(f, "within'[");
      return;
    case K::VerdictLeaf:
      require_extended(f);
      out_ += to_string(f.verdict());
      return;
    }
  }

  std::string take() { return std::move(out_); }

private:
  void require_extended(const Formula& f) const {
    if (mode_ != PrintMode::Extended)
      throw PreconditionError(std::string(kind_name(f.kind())) +
                              " nodes can only be printed in extended mode");
  }

  void atom(const AtomRef& ref) {
    if (ref.is_remote()) {
      out_ += '@';
      out_ += ref.agent;
      out_ += '.';
    }
    out_ += ref.name;
  }

  void prophecy(const Formula& f, const char* head) {
    out_ += head;
    out_ += f.lower().to_string();
    out_ += ',';
    out_ += f.upper().to_string();
    out_ += "] ";
    if (f.polarity() == Polarity::Negated)
      out_ += '!';
    atom(f.atom_ref());
  }

  void operand(const Formula& f) { parenthesized(f, precedence(f.kind()) < 5); }

  // A binary child of a binary operator is bracketed unless it is the same
  // operator on its associative side.
  void binary(const Formula& f, const char* op) {
    const FormulaKind k = f.kind();
    auto needs = [&](const Formula& c, bool is_left) {
      if (!is_binary(c.kind()))
        return false;
      if (c.kind() != k)
        return true;
      return right_associative(k) ? is_left : !is_left;
    };
    parenthesized(f.left(), needs(f.left(), true));
    out_ += op;
    parenthesized(f.right(), needs(f.right(), false));
  }

  void parenthesized(const Formula& f, bool wrap) {
    if (wrap)
      out_ += '(';
    print(f);
    if (wrap)
      out_ += ')';
  }

  PrintMode mode_;
  std::string out_;
};

} // namespace

bool is_reserved_word(std::string_view word) {
  for (auto r : kReserved)
    if (r == word)
      return true;
  return false;
}

Property parse_formula(std::string_view text) { return Parser(text).property(); }

Formula parse_bare_formula(std::string_view text) { return Parser(text).bare(); }

std::vector<Property> parse_properties(std::string_view text) {
  std::vector<Property> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos)
      continue;
    try {
      out.push_back(parse_formula(line));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line_no, e.column());
    }
  }
  return out;
}

std::string to_string(const Formula& f, PrintMode mode) {
  Printer p(mode);
  p.print(f);
  return p.take();
}

std::string print_formula(const Property& p, PrintMode mode) {
  return "@" + p.agent + ": " + to_string(p.body, mode);
}

} // namespace tempoweave
