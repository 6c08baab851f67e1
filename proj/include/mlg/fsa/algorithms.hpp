#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mlg/fsa/automaton.hpp"
#include "mlg/fsa/symbol.hpp"

namespace mlg::fsa {

struct RunResult {
  bool accepted = false;
  std::size_t steps = 0;
  std::size_t max_frontier = 0;
};

// Simulates the automaton one symbol at a time without early exit, so
// `steps` always equals the input length. Nondeterministic automata are
// run by subset simulation; `max_frontier` is the largest state set held.
// Throws UnknownSymbolError for a symbol outside the alphabet.
RunResult run(const FiniteAutomaton& fa, std::span<const Symbol> input);

std::set<StateId> epsilon_closure(const FiniteAutomaton& fa, std::set<StateId> states);
FiniteAutomaton remove_epsilons(const FiniteAutomaton& fa);

// Subset construction; result states are named after their subsets.
FiniteAutomaton determinize(const FiniteAutomaton& fa);

// Minimal trimmed DFA (dead and unreachable states removed) with states
// numbered q0.. in breadth-first order over the sorted alphabet. Throws
// ValidationError on nondeterministic input.
FiniteAutomaton minimize(const FiniteAutomaton& dfa);

// Accepts the reversal of L(fa).
FiniteAutomaton reverse(const FiniteAutomaton& fa);

// Keeps states that are reachable and co-reachable. The initial state is
// always kept.
FiniteAutomaton trim(const FiniteAutomaton& fa);

// {s in L(fa) : |s| <= max_len} in shortlex order.
std::vector<Word> enumerate_language(const FiniteAutomaton& fa, std::size_t max_len);

struct LanguageCount {
  bool infinite = false;
  boost::multiprecision::cpp_int count = 0;

  std::string to_string() const;
  friend bool operator==(const LanguageCount&, const LanguageCount&) = default;
};

// Number of distinct strings, or INFINITE when a cycle lies on an
// accepting path.
LanguageCount count_language(const FiniteAutomaton& fa);

// Transducer algebra

Transducer identity_transducer(const std::set<Symbol>& alphabet);

// Relational composition: t1 then t2. Throws ValidationError when t1's
// output alphabet is not contained in t2's input alphabet.
Transducer compose(const Transducer& t1, const Transducer& t2);

struct Transduction {
  std::vector<Word> outputs;  // shortlex order
  bool overflow = false;      // cap reached; outputs is partial
};

inline constexpr std::size_t kDefaultTransduceCap = 10'000;

Transduction transduce(const Transducer& t, std::span<const Symbol> input,
                       std::size_t cap = kDefaultTransduceCap);

// Register automata

// Product of base states with the reachable register valuations.
FiniteAutomaton expand_registers(const RegisterAutomaton& ra);

// Direct simulation over (state, valuation) configurations.
bool accepts(const RegisterAutomaton& ra, std::span<const Symbol> input);
std::vector<Word> enumerate_language(const RegisterAutomaton& ra, std::size_t max_len);

}  // namespace mlg::fsa
