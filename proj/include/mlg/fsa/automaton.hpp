#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mlg/error.hpp"
#include "mlg/fsa/symbol.hpp"

namespace mlg::fsa {

using StateId = std::size_t;

template <class L>
struct Arc {
  StateId src;
  L label;
  StateId dst;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// Named states, one initial state, a final set and a transition set.
// Arc insertion order is preserved (the text formats rely on it); duplicate
// arcs are ignored.
template <class L>
class StateGraph {
 public:
  using label_type = L;
  using arc_type = Arc<L>;

  StateId add_state(std::string name) {
    if (name.empty() || !is_valid_symbol_text(name)) {
      throw ValidationError("invalid state name '" + name + "'");
    }
    if (index_.contains(name)) {
      throw ValidationError("duplicate state name '" + name + "'");
    }
    const StateId id = names_.size();
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    final_.push_back(false);
    out_.emplace_back();
    return id;
  }

  // Returns the existing state of that name or creates it.
  StateId state(std::string_view name) {
    if (auto id = find_state(name)) return *id;
    return add_state(std::string(name));
  }

  std::optional<StateId> find_state(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t num_states() const noexcept { return names_.size(); }
  const std::string& state_name(StateId s) const { return names_.at(s); }

  void set_initial(StateId s) {
    check_state(s);
    initial_ = s;
  }
  StateId initial() const {
    if (!initial_) throw ValidationError("automaton has no initial state");
    return *initial_;
  }
  bool has_initial() const noexcept { return initial_.has_value(); }

  void set_final(StateId s, bool is_final = true) {
    check_state(s);
    final_[s] = is_final;
  }
  bool is_final(StateId s) const { return final_.at(s); }
  std::vector<StateId> finals() const {
    std::vector<StateId> out;
    for (StateId s = 0; s < final_.size(); ++s)
      if (final_[s]) out.push_back(s);
    return out;
  }

  // Returns false when the arc was already present.
  bool add_arc(StateId src, L label, StateId dst) {
    check_state(src);
    check_state(dst);
    arc_type arc{src, std::move(label), dst};
    for (std::size_t i : out_[src])
      if (arcs_[i] == arc) return false;
    out_[src].push_back(arcs_.size());
    arcs_.push_back(std::move(arc));
    return true;
  }

  std::span<const arc_type> arcs() const noexcept { return arcs_; }
  const arc_type& arc(std::size_t i) const { return arcs_.at(i); }
  // Indices into arcs() of the arcs leaving `s`, in insertion order.
  const std::vector<std::size_t>& out_arcs(StateId s) const { return out_.at(s); }

  friend bool operator==(const StateGraph& a, const StateGraph& b) {
    return a.names_ == b.names_ && a.initial_ == b.initial_ &&
           a.final_ == b.final_ && a.arcs_ == b.arcs_;
  }

 protected:
  void check_state(StateId s) const {
    if (s >= names_.size())
      throw ValidationError("state id " + std::to_string(s) + " out of range");
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> index_;
  std::optional<StateId> initial_;
  std::vector<bool> final_;
  std::vector<arc_type> arcs_;
  std::vector<std::vector<std::size_t>> out_;
};

class FiniteAutomaton : public StateGraph<Label> {
 public:
  void add_symbol(const Symbol& s) { alphabet_.insert(s); }
  const std::set<Symbol>& alphabet() const noexcept { return alphabet_; }

  // Adds the label to the alphabet as a side effect.
  bool add_transition(StateId src, const Label& label, StateId dst) {
    if (label) alphabet_.insert(*label);
    return add_arc(src, label, dst);
  }

  bool has_epsilon() const;
  // No epsilon arcs and no two arcs sharing (src, label).
  bool is_deterministic() const;
  // Throws ValidationError on a broken invariant.
  void validate() const;

  friend bool operator==(const FiniteAutomaton& a, const FiniteAutomaton& b) {
    return static_cast<const StateGraph<Label>&>(a) ==
               static_cast<const StateGraph<Label>&>(b) &&
           a.alphabet_ == b.alphabet_;
  }

 private:
  std::set<Symbol> alphabet_;
};

struct PairLabel {
  Label input;
  Label output;

  friend bool operator==(const PairLabel&, const PairLabel&) = default;
};

class Transducer : public StateGraph<PairLabel> {
 public:
  void add_input_symbol(const Symbol& s) { input_alphabet_.insert(s); }
  void add_output_symbol(const Symbol& s) { output_alphabet_.insert(s); }
  const std::set<Symbol>& input_alphabet() const noexcept { return input_alphabet_; }
  const std::set<Symbol>& output_alphabet() const noexcept { return output_alphabet_; }

  bool add_transition(StateId src, const Label& in, const Label& out, StateId dst) {
    if (in) input_alphabet_.insert(*in);
    if (out) output_alphabet_.insert(*out);
    return add_arc(src, PairLabel{in, out}, dst);
  }

  void validate() const;

  friend bool operator==(const Transducer& a, const Transducer& b) {
    return static_cast<const StateGraph<PairLabel>&>(a) ==
               static_cast<const StateGraph<PairLabel>&>(b) &&
           a.input_alphabet_ == b.input_alphabet_ &&
           a.output_alphabet_ == b.output_alphabet_;
  }

 private:
  std::set<Symbol> input_alphabet_;
  std::set<Symbol> output_alphabet_;
};

// Register guards and actions over finite-domain storage cells.
struct Guard {
  enum class Kind { kEqualsValue, kEqualsRegister, kIsSet, kIsUnset };
  Kind kind;
  std::string reg;
  std::optional<Symbol> value;  // kEqualsValue
  std::string other;            // kEqualsRegister

  static Guard equals(std::string reg, Symbol value) {
    return {Kind::kEqualsValue, std::move(reg), std::move(value), {}};
  }
  static Guard equals_register(std::string reg, std::string other) {
    return {Kind::kEqualsRegister, std::move(reg), std::nullopt, std::move(other)};
  }
  static Guard is_set(std::string reg) {
    return {Kind::kIsSet, std::move(reg), std::nullopt, {}};
  }
  static Guard is_unset(std::string reg) {
    return {Kind::kIsUnset, std::move(reg), std::nullopt, {}};
  }

  friend bool operator==(const Guard&, const Guard&) = default;
};

struct Action {
  enum class Kind { kSet, kClear };
  Kind kind;
  std::string reg;
  std::optional<Symbol> value;  // kSet

  static Action set(std::string reg, Symbol value) {
    return {Kind::kSet, std::move(reg), std::move(value)};
  }
  static Action clear(std::string reg) {
    return {Kind::kClear, std::move(reg), std::nullopt};
  }

  friend bool operator==(const Action&, const Action&) = default;
};

struct RegisterLabel {
  Label symbol;
  std::vector<Guard> guards;
  std::vector<Action> actions;

  friend bool operator==(const RegisterLabel&, const RegisterLabel&) = default;
};

// One optional value per declared register, in register-name order.
using Valuation = std::vector<std::optional<Symbol>>;

// A finite automaton with finitely many registers over finite value
// domains. Guards on an arc are conjunctive and are tested before its
// actions run. `final_guards` must hold for a final state to accept.
class RegisterAutomaton : public StateGraph<RegisterLabel> {
 public:
  void declare_register(const std::string& name, std::set<Symbol> domain);
  const std::map<std::string, std::set<Symbol>>& registers() const noexcept {
    return registers_;
  }
  // Position of the register in a Valuation.
  std::size_t register_index(std::string_view name) const;

  void add_symbol(const Symbol& s) { alphabet_.insert(s); }
  const std::set<Symbol>& alphabet() const noexcept { return alphabet_; }

  bool add_transition(StateId src, const Label& symbol, StateId dst,
                      std::vector<Guard> guards = {},
                      std::vector<Action> actions = {}) {
    if (symbol) alphabet_.insert(*symbol);
    return add_arc(src, RegisterLabel{symbol, std::move(guards), std::move(actions)},
                   dst);
  }

  void add_final_guard(Guard g) { final_guards_.push_back(std::move(g)); }
  const std::vector<Guard>& final_guards() const noexcept { return final_guards_; }

  Valuation empty_valuation() const { return Valuation(registers_.size()); }
  bool satisfies(const Valuation& v, std::span<const Guard> guards) const;
  Valuation apply(Valuation v, std::span<const Action> actions) const;

  // The underlying automaton with guards and actions erased.
  FiniteAutomaton base() const;

  void validate() const;

  friend bool operator==(const RegisterAutomaton& a, const RegisterAutomaton& b) {
    return static_cast<const StateGraph<RegisterLabel>&>(a) ==
               static_cast<const StateGraph<RegisterLabel>&>(b) &&
           a.registers_ == b.registers_ && a.alphabet_ == b.alphabet_ &&
           a.final_guards_ == b.final_guards_;
  }

 private:
  void check_guard(const Guard& g) const;

  std::map<std::string, std::set<Symbol>> registers_;
  std::set<Symbol> alphabet_;
  std::vector<Guard> final_guards_;
};

}  // namespace mlg::fsa
