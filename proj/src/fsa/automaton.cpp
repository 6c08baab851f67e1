#include "mlg/fsa/automaton.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace mlg::fsa {

bool FiniteAutomaton::has_epsilon() const {
  return std::any_of(arcs().begin(), arcs().end(),
                     [](const auto& a) { return !a.label.has_value(); });
}

bool FiniteAutomaton::is_deterministic() const {
  std::set<std::pair<StateId, Symbol>> seen;
  for (const auto& a : arcs()) {
    if (!a.label) return false;
    if (!seen.emplace(a.src, *a.label).second) return false;
  }
  return true;
}

void FiniteAutomaton::validate() const {
  if (!has_initial()) throw ValidationError("automaton has no initial state");
  for (const auto& a : arcs()) {
    if (a.label && !alphabet().contains(*a.label))
      throw ValidationError("label '" + a.label->text() + "' not in alphabet");
  }
}

void Transducer::validate() const {
  if (!has_initial()) throw ValidationError("transducer has no initial state");
  for (const auto& a : arcs()) {
    if (a.label.input && !input_alphabet_.contains(*a.label.input))
      throw ValidationError("input label '" + a.label.input->text() +
                            "' not in input alphabet");
    if (a.label.output && !output_alphabet_.contains(*a.label.output))
      throw ValidationError("output label '" + a.label.output->text() +
                            "' not in output alphabet");
  }
}

void RegisterAutomaton::declare_register(const std::string& name,
                                         std::set<Symbol> domain) {
  if (!is_valid_symbol_text(name) || name.find('=') != std::string::npos ||
      name.front() == '!')
    throw ValidationError("invalid register name '" + name + "'");
  if (domain.empty())
    throw ValidationError("register '" + name + "' has an empty domain");
  if (!arcs().empty() || !final_guards_.empty())
    throw ValidationError("registers must be declared before transitions");
  registers_[name] = std::move(domain);
}

std::size_t RegisterAutomaton::register_index(std::string_view name) const {
  std::size_t i = 0;
  for (const auto& [reg, _] : registers_) {
    if (reg == name) return i;
    ++i;
  }
  throw ValidationError("undeclared register '" + std::string(name) + "'");
}

bool RegisterAutomaton::satisfies(const Valuation& v,
                                  std::span<const Guard> guards) const {
  for (const auto& g : guards) {
    const auto& cell = v[register_index(g.reg)];
    switch (g.kind) {
      case Guard::Kind::kEqualsValue:
        if (!cell || *cell != *g.value) return false;
        break;
      case Guard::Kind::kEqualsRegister: {
        const auto& other = v[register_index(g.other)];
        if (!cell || !other || *cell != *other) return false;
        break;
      }
      case Guard::Kind::kIsSet:
        if (!cell) return false;
        break;
      case Guard::Kind::kIsUnset:
        if (cell) return false;
        break;
    }
  }
  return true;
}

Valuation RegisterAutomaton::apply(Valuation v,
                                   std::span<const Action> actions) const {
  for (const auto& a : actions) {
    auto& cell = v[register_index(a.reg)];
    if (a.kind == Action::Kind::kSet)
      cell = a.value;
    else
      cell.reset();
  }
  return v;
}

FiniteAutomaton RegisterAutomaton::base() const {
  FiniteAutomaton fa;
  for (StateId s = 0; s < num_states(); ++s) fa.add_state(state_name(s));
  for (const auto& sym : alphabet_) fa.add_symbol(sym);
  if (has_initial()) fa.set_initial(initial());
  for (StateId s : finals()) fa.set_final(s);
  for (const auto& a : arcs()) fa.add_transition(a.src, a.label.symbol, a.dst);
  return fa;
}

void RegisterAutomaton::check_guard(const Guard& g) const {
  auto it = registers_.find(g.reg);
  if (it == registers_.end())
    throw ValidationError("guard references undeclared register '" + g.reg + "'");
  if (g.kind == Guard::Kind::kEqualsValue) {
    if (!g.value || !it->second.contains(*g.value))
      throw ValidationError("guard value outside the domain of '" + g.reg + "'");
  }
  if (g.kind == Guard::Kind::kEqualsRegister && !registers_.contains(g.other))
    throw ValidationError("guard references undeclared register '" + g.other + "'");
}

void RegisterAutomaton::validate() const {
  if (!has_initial()) throw ValidationError("register automaton has no initial state");
  for (const auto& a : arcs()) {
    if (a.label.symbol && !alphabet_.contains(*a.label.symbol))
      throw ValidationError("label '" + a.label.symbol->text() + "' not in alphabet");
    for (const auto& g : a.label.guards) check_guard(g);
    for (const auto& act : a.label.actions) {
      auto it = registers_.find(act.reg);
      if (it == registers_.end())
        throw ValidationError("action references undeclared register '" + act.reg +
                              "'");
      if (act.kind == Action::Kind::kSet &&
          (!act.value || !it->second.contains(*act.value)))
        throw ValidationError("action value outside the domain of '" + act.reg + "'");
    }
  }
  for (const auto& g : final_guards_) check_guard(g);
}

}  // namespace mlg::fsa
