#pragma once

#include "tempoweave/formula.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tempoweave {

/// Concrete syntax:
///
///     property  := "@" IDENT ":" formula
///     formula   := implies
///     implies   := or ( "->" implies )?
///     or        := and ( "|" and )*
///     and       := until ( "&" until )*
///     until     := unary ( "U" until )?
///     unary     := "!" unary | "X" unary | "WX" unary | "F" unary | "G" unary
///                | "within" "[" NUM "," NUM "]" ( "!" )? atom
///                | "true" | "false" | atom | "(" formula ")"
///     atom      := IDENT | "@" IDENT "." IDENT
///
/// Errors are reported as ParseError with line and column.
Property parse_formula(std::string_view text);

/// Parses a formula without the leading `@agent:` annotation.
Formula parse_bare_formula(std::string_view text);

/// Parses a properties file: one property per line, `#` starts a comment.
std::vector<Property> parse_properties(std::string_view text);

enum class PrintMode {
  /// User syntax only; throws PreconditionError on monitor-internal nodes.
  User,
  /// Also prints verdict leaves (`T`, `Tc`, `Fc`, `F`) and `within'[..]`.
  Extended,
};

std::string print_formula(const Property& p, PrintMode mode = PrintMode::User);
std::string to_string(const Formula& f, PrintMode mode = PrintMode::User);

/// Reserved words that cannot be used as proposition or agent names.
bool is_reserved_word(std::string_view word);

} // namespace tempoweave
