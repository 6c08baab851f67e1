#include "mlg/stress/stress.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace mlg::stress {

SyntaxTree SyntaxTree::leaf(std::string word) {
  if (word.empty()) throw ValidationError("empty leaf word");
  for (char c : word)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')')
      throw ValidationError("invalid leaf word '" + word + "'");
  SyntaxTree t;
  t.word_ = std::move(word);
  return t;
}

SyntaxTree SyntaxTree::node(std::vector<SyntaxTree> children) {
  if (children.empty()) throw ValidationError("internal node without children");
  if (children.size() == 1) return std::move(children.front());
  SyntaxTree t;
  t.children_ = std::move(children);
  return t;
}

std::size_t SyntaxTree::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children_) n += c.leaf_count();
  return n;
}

std::size_t SyntaxTree::depth() const {
  std::size_t d = 0;
  for (const auto& c : children_) d = std::max(d, c.depth() + 1);
  return d;
}

std::vector<std::string> SyntaxTree::leaves() const {
  std::vector<std::string> out;
  auto walk = [&](auto&& self, const SyntaxTree& t) -> void {
    if (t.is_leaf()) {
      out.push_back(t.word());
      return;
    }
    for (const auto& c : t.children()) self(self, c);
  };
  walk(walk, *this);
  return out;
}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  SyntaxTree parse() {
    SyntaxTree t = parse_node();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  SyntaxTree parse_node() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] != '(') return SyntaxTree::leaf(read_word());
    ++pos_;
    std::vector<SyntaxTree> children;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) fail("missing ')'");
      if (text_[pos_] == ')') break;
      children.push_back(parse_node());
    }
    ++pos_;
    if (children.empty()) fail("empty constituent");
    return SyntaxTree::node(std::move(children));
  }

  std::string read_word() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return std::string(text_.substr(begin, pos_ - begin));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(1, "tree column " + std::to_string(pos_ + 1) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void encode(const SyntaxTree& t, int value, int depth, std::vector<int>& out) {
  if (t.is_leaf()) {
    out.push_back(value);
    return;
  }
  const auto& kids = t.children();
  for (std::size_t i = 0; i < kids.size(); ++i)
    encode(kids[i], i + 1 == kids.size() ? value : depth + 2, depth + 1, out);
}

struct Decoder {
  const std::vector<int>& values;
  const std::vector<std::string>& words;
  std::size_t next_word = 0;

  SyntaxTree leaf() {
    ++next_word;
    if (!words.empty()) return SyntaxTree::leaf(words[next_word - 1]);
    return SyntaxTree::leaf("w" + std::to_string(next_word));
  }

  // Segment [lo, hi) is a constituent at `depth` carrying `value`.
  SyntaxTree decode(std::size_t lo, std::size_t hi, int depth, int value) {
    if (values[hi - 1] != value)
      throw NotDecodableError(hi - 1, "expected " + std::to_string(value) + ", found " +
                                          std::to_string(values[hi - 1]));
    if (hi - lo == 1) return leaf();
    const int boundary = depth + 2;
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    std::size_t start = lo;
    for (std::size_t i = lo; i + 1 < hi; ++i) {
      if (values[i] == boundary) {
        spans.emplace_back(start, i + 1);
        start = i + 1;
      } else if (values[i] < boundary) {
        throw NotDecodableError(i, "value " + std::to_string(values[i]) +
                                       " is too strong for a constituent at depth " +
                                       std::to_string(depth + 1));
      }
    }
    if (spans.empty())
      throw NotDecodableError(lo, "no constituent boundary at value " + std::to_string(boundary));
    std::vector<SyntaxTree> kids;
    for (auto [a, b] : spans) kids.push_back(decode(a, b, depth + 1, boundary));
    kids.push_back(decode(start, hi, depth + 1, value));
    return SyntaxTree::node(std::move(kids));
  }
};

bool decode_superscript(std::string_view s, std::size_t& pos, int& digit) {
  static const std::pair<std::string_view, int> kDigits[] = {
      {"⁰", 0}, {"¹", 1}, {"²", 2}, {"³", 3}, {"⁴", 4},
      {"⁵", 5}, {"⁶", 6}, {"⁷", 7}, {"⁸", 8}, {"⁹", 9}};
  for (auto [text, d] : kDigits) {
    if (s.substr(pos, text.size()) == text) {
      pos += text.size();
      digit = d;
      return true;
    }
  }
  return false;
}

int parse_int(std::string_view s, const std::string& token) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ParseError(1, "bad stress value in '" + token + "'");
  return v;
}

}  // namespace

SyntaxTree parse_tree(std::string_view text) { return TreeParser(text).parse(); }

std::string to_string(const SyntaxTree& t) {
  if (t.is_leaf()) return t.word();
  std::string out = "(";
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    if (i) out += ' ';
    out += to_string(t.children()[i]);
  }
  return out + ")";
}

SyntaxTree mirror(const SyntaxTree& t) {
  if (t.is_leaf()) return t;
  std::vector<SyntaxTree> kids;
  for (auto it = t.children().rbegin(); it != t.children().rend(); ++it)
    kids.push_back(mirror(*it));
  return SyntaxTree::node(std::move(kids));
}

SyntaxTree relabel(const SyntaxTree& t, const std::vector<std::string>& words) {
  if (words.size() != t.leaf_count())
    throw ValidationError("expected " + std::to_string(t.leaf_count()) + " words, got " +
                          std::to_string(words.size()));
  std::size_t next = 0;
  auto walk = [&](auto&& self, const SyntaxTree& n) -> SyntaxTree {
    if (n.is_leaf()) return SyntaxTree::leaf(words[next++]);
    std::vector<SyntaxTree> kids;
    for (const auto& c : n.children()) kids.push_back(self(self, c));
    return SyntaxTree::node(std::move(kids));
  };
  return walk(walk, t);
}

void check_coding(const std::vector<int>& values) {
  if (values.empty()) throw NotDecodableError(0, "empty coding");
  std::size_t ones = 0;
  int max = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1) throw NotDecodableError(i, "values must be positive");
    if (values[i] == 1 && ++ones > 1) throw NotDecodableError(i, "second value 1");
    max = std::max(max, values[i]);
  }
  if (ones == 0) throw NotDecodableError(0, "no value 1");
  for (int v = 2; v <= max; ++v) {
    if (std::find(values.begin(), values.end(), v - 1) == values.end()) {
      auto at = std::find(values.begin(), values.end(), v);
      if (at != values.end())
        throw NotDecodableError(static_cast<std::size_t>(at - values.begin()),
                                "value " + std::to_string(v) + " without a value " +
                                    std::to_string(v - 1));
    }
  }
}

StressCoding nsr_encode(const SyntaxTree& t) {
  StressCoding c{{}, Direction::kNsr};
  encode(t, 1, 0, c.values);
  return c;
}

StressCoding csr_encode(const SyntaxTree& t) {
  StressCoding c{nsr_encode(mirror(t)).values, Direction::kCsr};
  std::reverse(c.values.begin(), c.values.end());
  return c;
}

SyntaxTree nsr_decode(const std::vector<int>& values, const std::vector<std::string>& words) {
  check_coding(values);
  if (!words.empty() && words.size() != values.size())
    throw ValidationError("word count does not match coding length");
  Decoder d{values, words};
  return d.decode(0, values.size(), 0, 1);
}

SyntaxTree csr_decode(const std::vector<int>& values, const std::vector<std::string>& words) {
  std::vector<int> rv(values.rbegin(), values.rend());
  std::vector<std::string> rw(words.rbegin(), words.rend());
  if (words.empty())
    for (std::size_t i = values.size(); i > 0; --i) rw.push_back("w" + std::to_string(i));
  try {
    return mirror(nsr_decode(rv, rw));
  } catch (const NotDecodableError& e) {
    // Report the position in the caller's orientation.
    throw NotDecodableError(values.size() - 1 - e.position(), "not a compound stress image");
  }
}

SyntaxTree decode(const StressCoding& c, const std::vector<std::string>& words) {
  return c.direction == Direction::kNsr ? nsr_decode(c.values, words)
                                        : csr_decode(c.values, words);
}

std::string format_coding(const std::vector<std::string>& words, const std::vector<int>& values) {
  if (words.size() != values.size()) throw ValidationError("word count does not match coding");
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i] + "^" + std::to_string(values[i]);
  }
  return out;
}

CodedWords parse_coding(std::string_view text) {
  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  CodedWords out;
  std::string tok;
  bool bare = false, worded = false;
  while (in >> tok) {
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      out.words.push_back(tok.substr(0, caret));
      out.values.push_back(parse_int(std::string_view(tok).substr(caret + 1), tok));
      worded = true;
      continue;
    }
    if (std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      out.values.push_back(parse_int(tok, tok));
      bare = true;
      continue;
    }
    // Trailing superscript digits.
    std::size_t cut = tok.size();
    for (std::size_t i = 0; i < tok.size(); ++i) {
      std::size_t p = i;
      int d = 0;
      bool all = true;
      while (p < tok.size()) {
        if (!decode_superscript(tok, p, d)) {
          all = false;
          break;
        }
      }
      if (all && i > 0) {
        cut = i;
        break;
      }
    }
    if (cut == tok.size()) throw ParseError(1, "token '" + tok + "' carries no stress value");
    int value = 0;
    for (std::size_t p = cut; p < tok.size();) {
      int d = 0;
      decode_superscript(tok, p, d);
      value = value * 10 + d;
    }
    out.words.push_back(tok.substr(0, cut));
    out.values.push_back(value);
    worded = true;
  }
  if (bare && worded) throw ParseError(1, "mixed bare values and word^value tokens");
  return out;
}

std::vector<int> apply_overrides(const std::vector<std::string>& words, std::vector<int> values,
                                 const OverrideTable& table) {
  std::string key;
  for (const auto& w : words) key += (key.empty() ? "" : " ") + w;
  if (auto it = table.find(key); it != table.end()) {
    if (it->second.size() != words.size())
      throw ValidationError("override for '" + key + "' has the wrong length");
    check_coding(it->second);
    return it->second;
  }
  return values;
}

}  // namespace mlg::stress
