#include "mlg/fsa/grammar.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "mlg/fsa/algorithms.hpp"

namespace mlg::fsa {

std::string to_string(Orientation o) { return o == Orientation::kRight ? "right" : "left"; }

std::string to_string(const RegularRule& rule, Orientation o) {
  std::string out = rule.lhs.text() + " ->";
  if (!rule.nonterminal) return out + " " + rule.terminal.text();
  if (o == Orientation::kRight)
    return out + " " + rule.terminal.text() + " " + rule.nonterminal->text();
  return out + " " + rule.nonterminal->text() + " " + rule.terminal.text();
}

void RegularGrammar::add_rule(RegularRule rule) {
  nonterminals_.insert(rule.lhs);
  terminals_.insert(rule.terminal);
  if (rule.nonterminal) nonterminals_.insert(*rule.nonterminal);
  rules_.push_back(std::move(rule));
}

void RegularGrammar::validate() const {
  if (!nonterminals_.contains(start_))
    throw ValidationError("start symbol '" + start_.text() + "' is not a nonterminal");
  for (const auto& n : nonterminals_) {
    if (n.text() == kEndState)
      throw ValidationError("'END' is reserved and cannot be a nonterminal");
    if (terminals_.contains(n))
      throw ValidationError("symbol '" + n.text() + "' is both terminal and nonterminal");
  }
  for (const auto& r : rules_) {
    const auto text = to_string(r, orientation_);
    if (!nonterminals_.contains(r.lhs))
      throw ValidationError("rule '" + text + "': lhs is not a nonterminal");
    if (!terminals_.contains(r.terminal))
      throw ValidationError("rule '" + text + "': '" + r.terminal.text() +
                            "' is not a terminal");
    if (r.nonterminal && !nonterminals_.contains(*r.nonterminal))
      throw ValidationError("rule '" + text + "': '" + r.nonterminal->text() +
                            "' is not a nonterminal");
  }
}

void ContextFreeGrammar::add_rule(CfgRule rule) {
  nonterminals_.insert(rule.lhs);
  terminals_.erase(rule.lhs);
  rules_.push_back(std::move(rule));
}

void ContextFreeGrammar::finalize_vocabulary() {
  for (const auto& r : rules_)
    for (const auto& s : r.rhs)
      if (!nonterminals_.contains(s)) terminals_.insert(s);
}

void ContextFreeGrammar::validate() const {
  if (!nonterminals_.contains(start_))
    throw ValidationError("start symbol '" + start_.text() + "' is not a nonterminal");
  for (const auto& n : nonterminals_)
    if (terminals_.contains(n))
      throw ValidationError("symbol '" + n.text() + "' is both terminal and nonterminal");
  for (const auto& r : rules_) {
    if (!nonterminals_.contains(r.lhs))
      throw ValidationError("rule for '" + r.lhs.text() + "': lhs is not a nonterminal");
    for (const auto& s : r.rhs)
      if (!nonterminals_.contains(s) && !terminals_.contains(s))
        throw ValidationError("rule for '" + r.lhs.text() + "': undeclared symbol '" +
                              s.text() + "'");
  }
}

ContextFreeGrammar to_context_free(const RegularGrammar& g) {
  ContextFreeGrammar cfg(g.start());
  for (const auto& n : g.nonterminals()) cfg.add_nonterminal(n);
  for (const auto& t : g.terminals()) cfg.add_terminal(t);
  for (const auto& r : g.rules()) {
    std::vector<Symbol> rhs{r.terminal};
    if (r.nonterminal) {
      if (g.orientation() == Orientation::kRight)
        rhs.push_back(*r.nonterminal);
      else
        rhs.insert(rhs.begin(), *r.nonterminal);
    }
    cfg.add_rule({r.lhs, std::move(rhs)});
  }
  return cfg;
}

ContextFreeGrammar reduce(const ContextFreeGrammar& g) {
  std::set<Symbol> productive;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules()) {
      if (productive.contains(r.lhs)) continue;
      if (std::all_of(r.rhs.begin(), r.rhs.end(), [&](const Symbol& s) {
            return g.terminals().contains(s) || productive.contains(s);
          })) {
        productive.insert(r.lhs);
        changed = true;
      }
    }
  }
  auto usable = [&](const CfgRule& r) {
    return productive.contains(r.lhs) &&
           std::all_of(r.rhs.begin(), r.rhs.end(), [&](const Symbol& s) {
             return g.terminals().contains(s) || productive.contains(s);
           });
  };

  std::set<Symbol> reachable;
  if (productive.contains(g.start())) {
    std::vector<Symbol> stack{g.start()};
    reachable.insert(g.start());
    while (!stack.empty()) {
      Symbol a = stack.back();
      stack.pop_back();
      for (const auto& r : g.rules()) {
        if (r.lhs != a || !usable(r)) continue;
        for (const auto& s : r.rhs)
          if (g.nonterminals().contains(s) && reachable.insert(s).second)
            stack.push_back(s);
      }
    }
  }

  ContextFreeGrammar out(g.start());
  for (const auto& r : g.rules()) {
    if (!usable(r) || !reachable.contains(r.lhs)) continue;
    for (const auto& s : r.rhs)
      if (g.terminals().contains(s)) out.add_terminal(s);
    out.add_rule(r);
  }
  return out;
}

FiniteAutomaton grammar_to_automaton(const RegularGrammar& g) {
  g.validate();
  FiniteAutomaton fa;
  for (const auto& t : g.terminals()) fa.add_symbol(t);
  fa.add_state(g.start().text());
  for (const auto& n : g.nonterminals()) fa.state(n.text());
  const StateId end = fa.add_state(std::string(kEndState));
  const StateId start = *fa.find_state(g.start().text());

  const bool right = g.orientation() == Orientation::kRight;
  // The left-branching case builds the mirror (right-branching) automaton
  // of the reversed language with every arc flipped, which is its reversal.
  fa.set_initial(right ? start : end);
  fa.set_final(right ? end : start);
  for (const auto& r : g.rules()) {
    const StateId lhs = *fa.find_state(r.lhs.text());
    const StateId rhs = r.nonterminal ? *fa.find_state(r.nonterminal->text()) : end;
    if (right)
      fa.add_transition(lhs, r.terminal, rhs);
    else
      fa.add_transition(rhs, r.terminal, lhs);
  }
  return fa;
}

namespace {

// Right-branching grammar for L(fa); `fa` must be epsilon-free.
RegularGrammar right_grammar(const FiniteAutomaton& input) {
  const FiniteAutomaton fa = trim(input);
  if (fa.is_final(fa.initial()))
    throw ValidationError(
        "language contains the empty string, which no regular rule can derive");

  std::set<std::string> used;
  std::vector<Symbol> nt;
  for (StateId s = 0; s < fa.num_states(); ++s) {
    std::string name = fa.state_name(s);
    while (name == kEndState || used.contains(name) ||
           fa.alphabet().contains(Symbol(name)))
      name = "N_" + name;
    used.insert(name);
    nt.emplace_back(name);
  }

  RegularGrammar g(nt[fa.initial()], Orientation::kRight);
  for (const auto& sym : fa.alphabet()) g.add_terminal(sym);
  for (const auto& a : fa.arcs()) {
    if (!fa.out_arcs(a.dst).empty()) g.add_rule({nt[a.src], *a.label, nt[a.dst]});
    if (fa.is_final(a.dst)) {
      RegularRule lexical{nt[a.src], *a.label, std::nullopt};
      const auto& rules = g.rules();
      if (std::find(rules.begin(), rules.end(), lexical) == rules.end())
        g.add_rule(std::move(lexical));
    }
  }
  return g;
}

}  // namespace

RegularGrammar automaton_to_grammar(const FiniteAutomaton& fa, Orientation o) {
  if (o == Orientation::kRight) return right_grammar(remove_epsilons(fa));

  // Right grammar of the reversed language, then mirror each rule.
  const RegularGrammar mirror = right_grammar(remove_epsilons(reverse(fa)));
  RegularGrammar g(mirror.start(), Orientation::kLeft);
  for (const auto& t : mirror.terminals()) g.add_terminal(t);
  for (const auto& r : mirror.rules()) g.add_rule(r);
  return g;
}

RegularGrammar convert_orientation(const RegularGrammar& g) {
  return automaton_to_grammar(grammar_to_automaton(g), g.orientation() == Orientation::kRight
                                                           ? Orientation::kLeft
                                                           : Orientation::kRight);
}

std::string to_string(RecursionType t) {
  switch (t) {
    case RecursionType::kR2Acyclic: return "R2_ACYCLIC";
    case RecursionType::kR3Left: return "R3_LEFT";
    case RecursionType::kR3Right: return "R3_RIGHT";
    case RecursionType::kR4Centre: return "R4_CENTRE";
  }
  return "?";
}

Classification classify_grammar(const ContextFreeGrammar& input) {
  const ContextFreeGrammar g = reduce(input);
  const auto& terminals = g.terminals();

  // Nonterminals that derive at least one nonempty string.
  std::set<Symbol> nonempty;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules()) {
      if (nonempty.contains(r.lhs)) continue;
      if (std::any_of(r.rhs.begin(), r.rhs.end(), [&](const Symbol& s) {
            return terminals.contains(s) || nonempty.contains(s);
          })) {
        nonempty.insert(r.lhs);
        changed = true;
      }
    }
  }
  auto contributes = [&](const Symbol& s) {
    return terminals.contains(s) || nonempty.contains(s);
  };

  // Edges (B -> X, left context nonempty, right context nonempty).
  struct Edge {
    Symbol to;
    bool left;
    bool right;
  };
  std::map<Symbol, std::vector<Edge>> edges;
  for (const auto& r : g.rules()) {
    for (std::size_t i = 0; i < r.rhs.size(); ++i) {
      if (terminals.contains(r.rhs[i])) continue;
      bool left = std::any_of(r.rhs.begin(), r.rhs.begin() + static_cast<long>(i), contributes);
      bool right = std::any_of(r.rhs.begin() + static_cast<long>(i) + 1, r.rhs.end(), contributes);
      edges[r.lhs].push_back({r.rhs[i], left, right});
    }
  }

  bool any_centre = false, any_left = false, any_right = false;
  for (const auto& a : g.nonterminals()) {
    // Search over (symbol, left-nonempty, right-nonempty) reached from a
    // by at least one rewrite.
    std::set<std::tuple<Symbol, bool, bool>> seen;
    std::deque<std::tuple<Symbol, bool, bool>> queue;
    auto push = [&](const Symbol& s, bool l, bool r) {
      if (seen.emplace(s, l, r).second) queue.emplace_back(s, l, r);
    };
    for (const auto& e : edges[a]) push(e.to, e.left, e.right);
    while (!queue.empty()) {
      auto [s, l, r] = queue.front();
      queue.pop_front();
      for (const auto& e : edges[s]) push(e.to, l || e.left, r || e.right);
    }
    if (seen.contains({a, true, true})) any_centre = true;
    if (seen.contains({a, true, false})) any_right = true;
    if (seen.contains({a, false, true})) any_left = true;
  }

  Classification c{};
  if (any_centre) {
    c.recursion_type = RecursionType::kR4Centre;
  } else if (any_right && any_left) {
    c.recursion_type = RecursionType::kR3Right;
    c.mixed_linear = true;
  } else if (any_right) {
    c.recursion_type = RecursionType::kR3Right;
  } else if (any_left) {
    c.recursion_type = RecursionType::kR3Left;
  } else {
    c.recursion_type = RecursionType::kR2Acyclic;
  }
  c.finite_language = c.recursion_type == RecursionType::kR2Acyclic;
  c.cnf = std::all_of(g.rules().begin(), g.rules().end(), [&](const CfgRule& r) {
    if (r.rhs.size() == 1) return terminals.contains(r.rhs[0]);
    return r.rhs.size() == 2 && !terminals.contains(r.rhs[0]) &&
           !terminals.contains(r.rhs[1]);
  });
  return c;
}

}  // namespace mlg::fsa
