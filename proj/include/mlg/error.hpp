#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlg {

// Base of every domain error raised by the library. `code()` is a stable
// machine-readable tag printed by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error("VALIDATION", message) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("PARSE", "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnknownSymbolError : public Error {
 public:
  UnknownSymbolError(std::size_t position, const std::string& symbol)
      : Error("UNKNOWN_SYMBOL", "unknown symbol '" + symbol + "' at position " +
                                    std::to_string(position)),
        position_(position),
        symbol_(symbol) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::size_t position_;
  std::string symbol_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error("DOMAIN", message) {}
  DomainError(std::string code, const std::string& message)
      : Error(std::move(code), message) {}
};

}  // namespace mlg
