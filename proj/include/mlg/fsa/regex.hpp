#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlg/fsa/automaton.hpp"
#include "mlg/fsa/symbol.hpp"

namespace mlg::fsa {

// Expression tree over multi-character symbols.
struct Regex {
  enum class Kind { kEmptySet, kEpsilon, kSymbol, kConcat, kUnion, kStar, kOptional };

  Kind kind = Kind::kEmptySet;
  std::optional<Symbol> symbol;
  std::vector<Regex> children;

  static Regex empty_set() { return {Kind::kEmptySet, std::nullopt, {}}; }
  static Regex epsilon() { return {Kind::kEpsilon, std::nullopt, {}}; }
  static Regex sym(std::string_view text) {
    return {Kind::kSymbol, Symbol(std::string(text)), {}};
  }
  static Regex concat(std::vector<Regex> parts) {
    return {Kind::kConcat, std::nullopt, std::move(parts)};
  }
  static Regex alt(std::vector<Regex> parts) {
    return {Kind::kUnion, std::nullopt, std::move(parts)};
  }
  static Regex star(Regex r) { return {Kind::kStar, std::nullopt, {std::move(r)}}; }
  static Regex optional(Regex r) { return {Kind::kOptional, std::nullopt, {std::move(r)}}; }
  // r r*
  static Regex plus(Regex r) { return concat({r, star(r)}); }

  friend bool operator==(const Regex&, const Regex&) = default;
};

// Thompson construction; the result has epsilon arcs.
FiniteAutomaton regex_compile(const Regex& expr);

// Text syntax: whitespace-separated symbols, `|` union, postfix `*` and
// `?`, parentheses for grouping, `()` for epsilon and `{}` for the empty
// set. Symbols are runs of characters other than whitespace and `|*?()`.
Regex parse_regex(std::string_view text);
std::string to_string(const Regex& expr);

}  // namespace mlg::fsa
