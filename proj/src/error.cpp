#include "rastergraph/error.hpp"

namespace rastergraph {

namespace {

std::string withPosition(const std::string& message, std::size_t line, std::size_t column) {
  if (line == 0) return message;
  std::string out = "line " + std::to_string(line);
  if (column != 0) out += ", column " + std::to_string(column);
  return out + ": " + message;
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(withPosition(message, line, column)), line_(line), column_(column) {}

}  // namespace rastergraph
