#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace repmas {

enum class Errc {
  MalformedTuple,
  UnknownClassPrefix,
  UnknownQualifier,
  BadCoordinate,
  NonFiniteInput,
  UnknownState,
  SchemaError,
  DanglingStateRef,
  TerminalWithOutgoing,
  StaleFsf,
  InvalidFsf,
  MissingQualifier,
  ParseError,
  NonMonotoneTime,
  ConfigError,
  IoError,
};

std::string_view to_string(Errc code);

/// Single exception type for the library; `code()` tells callers what failed.
/// Line-oriented parsers attach the 1-based line number of the offending input.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Error(Errc code, const std::string& message, std::size_t line)
      : std::runtime_error(std::string(to_string(code)) + " at line " + std::to_string(line) +
                           ": " + message),
        code_(code),
        line_(line) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  Errc code_;
  std::optional<std::size_t> line_;
};

}  // namespace repmas
