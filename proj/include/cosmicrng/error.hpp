#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cosmicrng {

/// Broad category of a library failure. The CLI maps these onto exit codes.
enum class ErrorKind {
  Parse,
  Duplicate,
  Validation,
  NotFound,
  Geometry,
  Capacity,
  Ordering,
  Range,
  EmptyData,
  Domain,
  Length,
  Shape,
  Underdetermined,
  Division,
  Infeasible,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by CSV ingestion; carries the 1-based line number of the bad row.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cosmicrng
