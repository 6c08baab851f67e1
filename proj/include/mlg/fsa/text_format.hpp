#pragma once

#include <string>
#include <string_view>

#include "mlg/fsa/automaton.hpp"
#include "mlg/fsa/grammar.hpp"

// Line-oriented text formats. `#` starts a comment; blank lines are
// ignored. serialize() emits the canonical form, and parsing a canonical
// document and serializing it again reproduces it byte for byte.
//
// Regular grammar:
//   @start A
//   @orientation right
//   A -> very A
//   A -> big
//
// Context-free grammar (`_` is the empty right-hand side):
//   @start S
//   S -> NP VP
//
// Automaton:
//   @states A END
//   @alphabet big small very
//   @initial A
//   @finals END
//   A very A
//
// Transducer: as the automaton, with `@input-alphabet` and
// `@output-alphabet` headers and `in:out` labels; `_` is epsilon.
//
// Register automaton: as the automaton, plus `@register NAME v1 v2 ...`
// headers, an optional `@final-guards` header, and guards/actions after
// the target state: `?R=v` (equals value), `?R==S` (equals register),
// `?R` (set), `?!R` (unset), `+R=v` (set value), `-R` (clear).
namespace mlg::fsa {

RegularGrammar parse_regular_grammar(std::string_view text);
std::string serialize(const RegularGrammar& g);

ContextFreeGrammar parse_context_free_grammar(std::string_view text);
std::string serialize(const ContextFreeGrammar& g);

FiniteAutomaton parse_automaton(std::string_view text);
std::string serialize(const FiniteAutomaton& fa);

Transducer parse_transducer(std::string_view text);
std::string serialize(const Transducer& t);

RegisterAutomaton parse_register_automaton(std::string_view text);
std::string serialize(const RegisterAutomaton& ra);

std::string read_file(const std::string& path);

}  // namespace mlg::fsa
