#pragma once

#include <stdexcept>
#include <string>

namespace mrfsom {

/// Base for every error raised by the library. The CLI maps the concrete
/// type onto a process exit code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class CoordinateError : public Error { using Error::Error; };
class ParameterError : public Error { using Error::Error; };
class ShapeError : public Error { using Error::Error; };
class DataError : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class NormalizationError : public Error { using Error::Error; };
class ReportError : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };
class SamplingError : public Error { using Error::Error; };

/// Malformed text input. `line` is 1-based; 0 when not applicable.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    std::string where = "line " + std::to_string(line);
    if (column != 0) where += ", column " + std::to_string(column);
    return where + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace mrfsom
