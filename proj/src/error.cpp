#include "tempoweave/error.hpp"

namespace tempoweave {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : Error(line == 0 ? what
                      : std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      message_(what), line_(line), column_(column) {}

} // namespace tempoweave
