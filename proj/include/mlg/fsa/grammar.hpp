#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mlg/fsa/automaton.hpp"
#include "mlg/fsa/symbol.hpp"

namespace mlg::fsa {

enum class Orientation { kRight, kLeft };

std::string to_string(Orientation o);

// Name of the synthetic final state created by grammar_to_automaton.
inline constexpr std::string_view kEndState = "END";

// A -> a, or A -> a B (right) / A -> B a (left).
struct RegularRule {
  Symbol lhs;
  Symbol terminal;
  std::optional<Symbol> nonterminal;

  friend bool operator==(const RegularRule&, const RegularRule&) = default;
};

class RegularGrammar {
 public:
  RegularGrammar(Symbol start, Orientation orientation)
      : start_(std::move(start)), orientation_(orientation) {
    nonterminals_.insert(start_);
  }

  void add_nonterminal(const Symbol& s) { nonterminals_.insert(s); }
  void add_terminal(const Symbol& s) { terminals_.insert(s); }
  // Declares the rule's symbols as a side effect.
  void add_rule(RegularRule rule);
  void add_rule(std::string_view lhs, std::string_view terminal) {
    add_rule(RegularRule{Symbol(std::string(lhs)), Symbol(std::string(terminal)),
                         std::nullopt});
  }
  void add_rule(std::string_view lhs, std::string_view terminal,
                std::string_view nonterminal) {
    add_rule(RegularRule{Symbol(std::string(lhs)), Symbol(std::string(terminal)),
                         Symbol(std::string(nonterminal))});
  }

  const Symbol& start() const noexcept { return start_; }
  Orientation orientation() const noexcept { return orientation_; }
  const std::set<Symbol>& nonterminals() const noexcept { return nonterminals_; }
  const std::set<Symbol>& terminals() const noexcept { return terminals_; }
  const std::vector<RegularRule>& rules() const noexcept { return rules_; }

  // Throws ValidationError naming the offending rule.
  void validate() const;

  friend bool operator==(const RegularGrammar&, const RegularGrammar&) = default;

 private:
  Symbol start_;
  Orientation orientation_;
  std::set<Symbol> nonterminals_;
  std::set<Symbol> terminals_;
  std::vector<RegularRule> rules_;
};

std::string to_string(const RegularRule& rule, Orientation o);

struct CfgRule {
  Symbol lhs;
  std::vector<Symbol> rhs;  // empty = epsilon rule

  friend bool operator==(const CfgRule&, const CfgRule&) = default;
};

class ContextFreeGrammar {
 public:
  explicit ContextFreeGrammar(Symbol start) : start_(std::move(start)) {
    nonterminals_.insert(start_);
  }

  void add_nonterminal(const Symbol& s) { nonterminals_.insert(s); }
  void add_terminal(const Symbol& s) { terminals_.insert(s); }
  // The lhs becomes a nonterminal; rhs symbols must already be declared
  // or are classified by finalize_vocabulary().
  void add_rule(CfgRule rule);

  // Every symbol that is not a nonterminal is made a terminal.
  void finalize_vocabulary();

  const Symbol& start() const noexcept { return start_; }
  const std::set<Symbol>& nonterminals() const noexcept { return nonterminals_; }
  const std::set<Symbol>& terminals() const noexcept { return terminals_; }
  const std::vector<CfgRule>& rules() const noexcept { return rules_; }

  void validate() const;

  friend bool operator==(const ContextFreeGrammar&, const ContextFreeGrammar&) = default;

 private:
  Symbol start_;
  std::set<Symbol> nonterminals_;
  std::set<Symbol> terminals_;
  std::vector<CfgRule> rules_;
};

ContextFreeGrammar to_context_free(const RegularGrammar& g);

// Unproductive symbols first, then unreachable ones.
ContextFreeGrammar reduce(const ContextFreeGrammar& g);

FiniteAutomaton grammar_to_automaton(const RegularGrammar& g);
RegularGrammar automaton_to_grammar(const FiniteAutomaton& fa, Orientation o);
RegularGrammar convert_orientation(const RegularGrammar& g);

enum class RecursionType { kR2Acyclic, kR3Left, kR3Right, kR4Centre };

std::string to_string(RecursionType t);

struct Classification {
  RecursionType recursion_type;
  bool cnf;
  bool finite_language;
  // Left and right recursion both present on different nonterminals with
  // no centre-embedding; recursion_type is then reported as R3_RIGHT.
  bool mixed_linear = false;
};

Classification classify_grammar(const ContextFreeGrammar& g);

}  // namespace mlg::fsa
