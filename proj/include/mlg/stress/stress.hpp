#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlg/error.hpp"

namespace mlg::stress {

// Ordered tree over words. Internal nodes have at least two children;
// unary nodes are collapsed by node().
class SyntaxTree {
 public:
  static SyntaxTree leaf(std::string word);
  static SyntaxTree node(std::vector<SyntaxTree> children);

  bool is_leaf() const noexcept { return children_.empty(); }
  const std::string& word() const noexcept { return word_; }
  const std::vector<SyntaxTree>& children() const noexcept { return children_; }

  std::size_t leaf_count() const;
  // A leaf has depth 0.
  std::size_t depth() const;
  std::vector<std::string> leaves() const;

  friend bool operator==(const SyntaxTree&, const SyntaxTree&) = default;

 private:
  std::string word_;
  std::vector<SyntaxTree> children_;
};

// Bracketed syntax: `((big John)(saw (small Joan)))`; a bare word is a leaf.
SyntaxTree parse_tree(std::string_view text);
std::string to_string(const SyntaxTree& t);
SyntaxTree mirror(const SyntaxTree& t);
// Same shape with the leaves renamed in order.
SyntaxTree relabel(const SyntaxTree& t, const std::vector<std::string>& words);

enum class Direction { kNsr, kCsr };

struct StressCoding {
  std::vector<int> values;
  Direction direction = Direction::kNsr;
  friend bool operator==(const StressCoding&, const StressCoding&) = default;
};

class NotDecodableError : public Error {
 public:
  NotDecodableError(std::size_t position, const std::string& message)
      : Error("NOT_DECODABLE", "position " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Exactly one 1, and no gaps below the maximum. Throws NotDecodableError.
void check_coding(const std::vector<int>& values);

// Rightmost child inherits the parent's value; any other child at depth d
// (root children have depth 1) gets d + 1.
StressCoding nsr_encode(const SyntaxTree& t);
// Mirror image: leftmost child inherits.
StressCoding csr_encode(const SyntaxTree& t);

// Inverse of the encoders. Leaves are named from `words` when given,
// otherwise w1, w2, ...
SyntaxTree nsr_decode(const std::vector<int>& values,
                      const std::vector<std::string>& words = {});
SyntaxTree csr_decode(const std::vector<int>& values,
                      const std::vector<std::string>& words = {});
SyntaxTree decode(const StressCoding& c, const std::vector<std::string>& words = {});

// `big^3 John^2`
std::string format_coding(const std::vector<std::string>& words,
                          const std::vector<int>& values);

struct CodedWords {
  std::vector<std::string> words;
  std::vector<int> values;
};
// Reads `big^3 John^2`, `big³ John²`, or bare values `3 2`.
CodedWords parse_coding(std::string_view text);

// Lexicalized stress patterns keyed by the space-joined words, applied
// after encoding (e.g. `Oxford Road`).
using OverrideTable = std::map<std::string, std::vector<int>>;
std::vector<int> apply_overrides(const std::vector<std::string>& words,
                                 std::vector<int> values, const OverrideTable& table);

}  // namespace mlg::stress
