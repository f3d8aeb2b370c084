#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace copaint {

// Base for every error the engine raises. code() is a stable identifier used
// by the HTTP layer and the CLI when reporting failures.
class Error : public std::runtime_error {
 public:
  Error(std::string_view code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  std::string_view code() const noexcept { return code_; }

 private:
  std::string_view code_;
};

#define COPAINT_ERROR(Name)                                        \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

COPAINT_ERROR(DecodeError)
COPAINT_ERROR(UnsupportedFormat)
COPAINT_ERROR(RangeError)
COPAINT_ERROR(EmptyResult)
COPAINT_ERROR(UnknownPath)
COPAINT_ERROR(NoData)
COPAINT_ERROR(NoCandidate)
COPAINT_ERROR(SchemaVersionMismatch)
COPAINT_ERROR(MissingAsset)
COPAINT_ERROR(DimensionMismatch)
COPAINT_ERROR(InvalidTransition)
COPAINT_ERROR(InvalidArgument)

#undef COPAINT_ERROR

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("ParseError", line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  // 1-based; 0 when the input has no line structure.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace copaint
