#include "mlg/fsa/symbol.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "mlg/error.hpp"

namespace mlg::fsa {

bool is_valid_symbol_text(std::string_view text) noexcept {
  if (text.empty() || text == kEpsilonText) return false;
  return std::none_of(text.begin(), text.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

Symbol::Symbol(std::string text) : text_(std::move(text)) {
  if (!is_valid_symbol_text(text_)) {
    throw ValidationError("invalid symbol '" + text_ +
                          "': must be nonempty, without whitespace, and not '_'");
  }
}

Word make_word(std::string_view spaced) {
  Word out;
  std::istringstream in{std::string(spaced)};
  std::string tok;
  while (in >> tok) out.emplace_back(tok);
  return out;
}

std::string to_string(const Word& word) {
  std::string out;
  for (const auto& s : word) {
    if (!out.empty()) out += ' ';
    out += s.text();
  }
  return out;
}

std::string to_string(const Label& label) {
  return label ? label->text() : std::string(kEpsilonText);
}

bool ShortLex::operator()(const Word& a, const Word& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace mlg::fsa
