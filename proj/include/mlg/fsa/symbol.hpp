#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mlg::fsa {

// A terminal or nonterminal symbol: nonempty, no whitespace. The single
// character "_" is reserved as the epsilon marker of the text formats.
class Symbol {
 public:
  explicit Symbol(std::string text);

  const std::string& text() const noexcept { return text_; }

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
  friend bool operator==(const Symbol&, const Symbol&) = default;

 private:
  std::string text_;
};

inline constexpr std::string_view kEpsilonText = "_";

bool is_valid_symbol_text(std::string_view text) noexcept;

// A transition label; nullopt is epsilon.
using Label = std::optional<Symbol>;

using Word = std::vector<Symbol>;

// Splits on whitespace.
Word make_word(std::string_view spaced);
std::string to_string(const Word& word);
std::string to_string(const Label& label);

// Shortlex order: shorter first, then lexicographic by symbol text.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const;
};

}  // namespace mlg::fsa
