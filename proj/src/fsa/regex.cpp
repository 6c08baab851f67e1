#include "mlg/fsa/regex.hpp"

#include <cctype>
#include <utility>

namespace mlg::fsa {
namespace {

struct Fragment {
  StateId start;
  StateId end;
};

class Thompson {
 public:
  Fragment build(const Regex& r) {
    switch (r.kind) {
      case Regex::Kind::kEmptySet: {
        return {fresh(), fresh()};
      }
      case Regex::Kind::kEpsilon: {
        Fragment f{fresh(), fresh()};
        fa.add_transition(f.start, std::nullopt, f.end);
        return f;
      }
      case Regex::Kind::kSymbol: {
        Fragment f{fresh(), fresh()};
        fa.add_transition(f.start, *r.symbol, f.end);
        return f;
      }
      case Regex::Kind::kConcat: {
        if (r.children.empty()) return build(Regex::epsilon());
        Fragment f = build(r.children.front());
        for (std::size_t i = 1; i < r.children.size(); ++i) {
          Fragment next = build(r.children[i]);
          fa.add_transition(f.end, std::nullopt, next.start);
          f.end = next.end;
        }
        return f;
      }
      case Regex::Kind::kUnion: {
        Fragment f{fresh(), fresh()};
        for (const auto& child : r.children) {
          Fragment c = build(child);
          fa.add_transition(f.start, std::nullopt, c.start);
          fa.add_transition(c.end, std::nullopt, f.end);
        }
        return f;
      }
      case Regex::Kind::kStar:
      case Regex::Kind::kOptional: {
        Fragment f{fresh(), fresh()};
        Fragment c = build(r.children.at(0));
        fa.add_transition(f.start, std::nullopt, c.start);
        fa.add_transition(c.end, std::nullopt, f.end);
        fa.add_transition(f.start, std::nullopt, f.end);
        if (r.kind == Regex::Kind::kStar) fa.add_transition(c.end, std::nullopt, c.start);
        return f;
      }
    }
    return {fresh(), fresh()};
  }

  StateId fresh() { return fa.add_state("t" + std::to_string(fa.num_states())); }

  FiniteAutomaton fa;
};

bool is_operator(char c) {
  return c == '|' || c == '*' || c == '?' || c == '(' || c == ')' || c == '{' || c == '}';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Regex parse() {
    Regex r = parse_union();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  Regex parse_union() {
    std::vector<Regex> alts{parse_concat()};
    while (peek() == '|') {
      ++pos_;
      alts.push_back(parse_concat());
    }
    return alts.size() == 1 ? std::move(alts.front()) : Regex::alt(std::move(alts));
  }

  Regex parse_concat() {
    std::vector<Regex> parts;
    for (char c = peek(); c != '\0' && c != '|' && c != ')'; c = peek())
      parts.push_back(parse_postfix());
    if (parts.empty()) return Regex::epsilon();
    return parts.size() == 1 ? std::move(parts.front()) : Regex::concat(std::move(parts));
  }

  Regex parse_postfix() {
    Regex r = parse_atom();
    for (char c = peek(); c == '*' || c == '?'; c = peek()) {
      ++pos_;
      r = c == '*' ? Regex::star(std::move(r)) : Regex::optional(std::move(r));
    }
    return r;
  }

  Regex parse_atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      if (peek() == ')') {
        ++pos_;
        return Regex::epsilon();
      }
      Regex inner = parse_union();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '{') {
      ++pos_;
      if (peek() != '}') fail("expected '}'");
      ++pos_;
      return Regex::empty_set();
    }
    if (c == '*' || c == '?') fail("postfix operator without operand");
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           !is_operator(text_[pos_]))
      ++pos_;
    if (begin == pos_) fail("expected a symbol");
    return Regex::sym(text_.substr(begin, pos_ - begin));
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(1, "regex column " + std::to_string(pos_ + 1) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(Regex::Kind k) {
  switch (k) {
    case Regex::Kind::kUnion: return 0;
    case Regex::Kind::kConcat: return 1;
    default: return 2;
  }
}

std::string wrap(const Regex& r, int context) {
  std::string s = to_string(r);
  return precedence(r.kind) < context ? "(" + s + ")" : s;
}

}  // namespace

FiniteAutomaton regex_compile(const Regex& expr) {
  Thompson t;
  Fragment f = t.build(expr);
  t.fa.set_initial(f.start);
  t.fa.set_final(f.end);
  return std::move(t.fa);
}

Regex parse_regex(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Regex& r) {
  switch (r.kind) {
    case Regex::Kind::kEmptySet: return "{}";
    case Regex::Kind::kEpsilon: return "()";
    case Regex::Kind::kSymbol: return r.symbol->text();
    case Regex::Kind::kConcat: {
      std::string out;
      for (const auto& c : r.children) {
        if (!out.empty()) out += ' ';
        out += wrap(c, 2 - (c.kind == Regex::Kind::kConcat ? 1 : 0));
      }
      return out.empty() ? "()" : out;
    }
    case Regex::Kind::kUnion: {
      std::string out;
      for (const auto& c : r.children) {
        if (!out.empty()) out += " | ";
        out += wrap(c, 1);
      }
      return out.empty() ? "{}" : out;
    }
    case Regex::Kind::kStar: return wrap(r.children[0], 2) + "*";
    case Regex::Kind::kOptional: return wrap(r.children[0], 2) + "?";
  }
  return "";
}

}  // namespace mlg::fsa
