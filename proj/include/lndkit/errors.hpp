#pragma once

#include <stdexcept>
#include <string>

namespace lndkit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ArithmeticError : Error { using Error::Error; };
struct DivisibilityError : Error { using Error::Error; };
struct VariableError : Error { using Error::Error; };
struct NotInvertibleError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct InternalError : Error { using Error::Error; };
struct InternalConsistencyError : Error { using Error::Error; };
struct SearchBudgetError : Error { using Error::Error; };
struct UnsupportedSplittingError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };

struct ParseError : Error {
  std::string detail;
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int column_)
      : Error(msg + " at line " + std::to_string(line_) + ", column " +
              std::to_string(column_)),
        detail(msg),
        line(line_),
        column(column_) {}
};

}  // namespace lndkit
