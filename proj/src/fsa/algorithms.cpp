#include "mlg/fsa/algorithms.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <utility>

namespace mlg::fsa {
namespace {

template <class G>
std::string unique_name(const G& graph, std::string base) {
  if (!graph.find_state(base)) return base;
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + "#" + std::to_string(k);
    if (!graph.find_state(candidate)) return candidate;
  }
}

std::set<StateId> step(const FiniteAutomaton& fa, const std::set<StateId>& from,
                       const Symbol& sym) {
  std::set<StateId> out;
  for (StateId s : from)
    for (std::size_t i : fa.out_arcs(s)) {
      const auto& a = fa.arc(i);
      if (a.label && *a.label == sym) out.insert(a.dst);
    }
  return out;
}

std::string subset_name(const FiniteAutomaton& fa, const std::set<StateId>& subset) {
  std::string name = "{";
  bool first = true;
  for (StateId s : subset) {
    if (!first) name += ',';
    name += fa.state_name(s);
    first = false;
  }
  return name + "}";
}

std::vector<bool> forward_reachable(const FiniteAutomaton& fa) {
  std::vector<bool> seen(fa.num_states(), false);
  if (!fa.has_initial()) return seen;
  std::vector<StateId> stack{fa.initial()};
  seen[fa.initial()] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (std::size_t i : fa.out_arcs(s)) {
      StateId d = fa.arc(i).dst;
      if (!seen[d]) {
        seen[d] = true;
        stack.push_back(d);
      }
    }
  }
  return seen;
}

std::vector<bool> backward_reachable(const FiniteAutomaton& fa) {
  std::vector<std::vector<StateId>> in(fa.num_states());
  for (const auto& a : fa.arcs()) in[a.dst].push_back(a.src);
  std::vector<bool> seen(fa.num_states(), false);
  std::vector<StateId> stack;
  for (StateId f : fa.finals()) {
    seen[f] = true;
    stack.push_back(f);
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : in[s])
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
  }
  return seen;
}

}  // namespace

RunResult run(const FiniteAutomaton& fa, std::span<const Symbol> input) {
  RunResult result;
  const auto& alphabet = fa.alphabet();
  if (fa.is_deterministic()) {
    std::optional<StateId> current = fa.initial();
    result.max_frontier = 1;
    for (std::size_t pos = 0; pos < input.size(); ++pos) {
      const Symbol& sym = input[pos];
      if (!alphabet.contains(sym)) throw UnknownSymbolError(pos, sym.text());
      if (current) {
        std::optional<StateId> next;
        for (std::size_t i : fa.out_arcs(*current))
          if (*fa.arc(i).label == sym) {
            next = fa.arc(i).dst;
            break;
          }
        current = next;
      }
      ++result.steps;
    }
    result.accepted = current && fa.is_final(*current);
    return result;
  }

  auto frontier = epsilon_closure(fa, {fa.initial()});
  result.max_frontier = frontier.size();
  for (std::size_t pos = 0; pos < input.size(); ++pos) {
    const Symbol& sym = input[pos];
    if (!alphabet.contains(sym)) throw UnknownSymbolError(pos, sym.text());
    frontier = epsilon_closure(fa, step(fa, frontier, sym));
    result.max_frontier = std::max(result.max_frontier, frontier.size());
    ++result.steps;
  }
  result.accepted = std::any_of(frontier.begin(), frontier.end(),
                                [&](StateId s) { return fa.is_final(s); });
  return result;
}

std::set<StateId> epsilon_closure(const FiniteAutomaton& fa, std::set<StateId> states) {
  std::vector<StateId> stack(states.begin(), states.end());
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (std::size_t i : fa.out_arcs(s)) {
      const auto& a = fa.arc(i);
      if (!a.label && states.insert(a.dst).second) stack.push_back(a.dst);
    }
  }
  return states;
}

FiniteAutomaton remove_epsilons(const FiniteAutomaton& fa) {
  FiniteAutomaton out;
  for (StateId s = 0; s < fa.num_states(); ++s) out.add_state(fa.state_name(s));
  for (const auto& sym : fa.alphabet()) out.add_symbol(sym);
  out.set_initial(fa.initial());
  for (StateId q = 0; q < fa.num_states(); ++q) {
    for (StateId p : epsilon_closure(fa, {q})) {
      if (fa.is_final(p)) out.set_final(q);
      for (std::size_t i : fa.out_arcs(p)) {
        const auto& a = fa.arc(i);
        if (a.label) out.add_transition(q, a.label, a.dst);
      }
    }
  }
  return out;
}

FiniteAutomaton determinize(const FiniteAutomaton& fa) {
  FiniteAutomaton dfa;
  for (const auto& sym : fa.alphabet()) dfa.add_symbol(sym);

  std::map<std::set<StateId>, StateId> ids;
  std::deque<std::set<StateId>> queue;
  auto intern = [&](const std::set<StateId>& subset) {
    auto it = ids.find(subset);
    if (it != ids.end()) return it->second;
    StateId id = dfa.add_state(unique_name(dfa, subset_name(fa, subset)));
    if (std::any_of(subset.begin(), subset.end(),
                    [&](StateId s) { return fa.is_final(s); }))
      dfa.set_final(id);
    ids.emplace(subset, id);
    queue.push_back(subset);
    return id;
  };

  dfa.set_initial(intern(epsilon_closure(fa, {fa.initial()})));
  while (!queue.empty()) {
    auto subset = std::move(queue.front());
    queue.pop_front();
    const StateId src = ids.at(subset);
    for (const auto& sym : fa.alphabet()) {
      auto target = epsilon_closure(fa, step(fa, subset, sym));
      if (target.empty()) continue;
      dfa.add_transition(src, sym, intern(target));
    }
  }
  return dfa;
}

FiniteAutomaton minimize(const FiniteAutomaton& dfa) {
  if (!dfa.is_deterministic())
    throw ValidationError("minimize requires a deterministic automaton");

  const std::vector<Symbol> sigma(dfa.alphabet().begin(), dfa.alphabet().end());
  const auto reach = forward_reachable(dfa);

  // Dense completed transition table over reachable states plus a sink.
  std::vector<StateId> states;
  std::vector<std::size_t> dense(dfa.num_states(), 0);
  for (StateId s = 0; s < dfa.num_states(); ++s)
    if (reach[s]) {
      dense[s] = states.size();
      states.push_back(s);
    }
  const std::size_t sink = states.size();
  const std::size_t n = sink + 1;
  std::vector<std::vector<std::size_t>> delta(n, std::vector<std::size_t>(sigma.size(), sink));
  std::vector<bool> accepting(n, false);
  for (std::size_t i = 0; i < sink; ++i) {
    const StateId s = states[i];
    accepting[i] = dfa.is_final(s);
    for (std::size_t a : dfa.out_arcs(s)) {
      const auto& arc = dfa.arc(a);
      auto k = static_cast<std::size_t>(
          std::lower_bound(sigma.begin(), sigma.end(), *arc.label) - sigma.begin());
      delta[i][k] = dense[arc.dst];
    }
  }

  // Moore refinement.
  std::vector<std::size_t> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = accepting[i] ? 1 : 0;
  std::size_t num_classes = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> signature_ids;
    std::vector<std::size_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> sig;
      sig.reserve(sigma.size() + 1);
      sig.push_back(cls[i]);
      for (std::size_t k = 0; k < sigma.size(); ++k) sig.push_back(cls[delta[i][k]]);
      next[i] = signature_ids.emplace(std::move(sig), signature_ids.size()).first->second;
    }
    const bool stable = signature_ids.size() == num_classes;
    num_classes = signature_ids.size();
    cls = std::move(next);
    if (stable) break;
  }

  const std::size_t dead = cls[sink];
  std::vector<std::size_t> representative(num_classes, n);
  for (std::size_t i = 0; i < n; ++i)
    if (representative[cls[i]] == n) representative[cls[i]] = i;

  FiniteAutomaton out;
  for (const auto& sym : sigma) out.add_symbol(sym);
  std::map<std::size_t, StateId> renumber;
  std::deque<std::size_t> queue;
  auto intern = [&](std::size_t c) {
    auto it = renumber.find(c);
    if (it != renumber.end()) return it->second;
    StateId id = out.add_state("q" + std::to_string(renumber.size()));
    if (accepting[representative[c]]) out.set_final(id);
    renumber.emplace(c, id);
    queue.push_back(c);
    return id;
  };
  const std::size_t start = cls[dense[dfa.initial()]];
  out.set_initial(intern(start));
  if (start == dead) return out;
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    const StateId src = renumber.at(c);
    for (std::size_t k = 0; k < sigma.size(); ++k) {
      const std::size_t target = cls[delta[representative[c]][k]];
      if (target == dead) continue;
      out.add_transition(src, sigma[k], intern(target));
    }
  }
  return out;
}

FiniteAutomaton reverse(const FiniteAutomaton& fa) {
  FiniteAutomaton out;
  for (StateId s = 0; s < fa.num_states(); ++s) out.add_state(fa.state_name(s));
  for (const auto& sym : fa.alphabet()) out.add_symbol(sym);
  const StateId start = out.add_state(unique_name(out, "REV_START"));
  out.set_initial(start);
  out.set_final(fa.initial());
  for (StateId f : fa.finals()) out.add_transition(start, std::nullopt, f);
  for (const auto& a : fa.arcs()) out.add_transition(a.dst, a.label, a.src);
  return out;
}

FiniteAutomaton trim(const FiniteAutomaton& fa) {
  const auto fwd = forward_reachable(fa);
  const auto bwd = backward_reachable(fa);
  std::vector<std::optional<StateId>> map(fa.num_states());
  FiniteAutomaton out;
  for (const auto& sym : fa.alphabet()) out.add_symbol(sym);
  for (StateId s = 0; s < fa.num_states(); ++s) {
    if ((fwd[s] && bwd[s]) || s == fa.initial()) {
      map[s] = out.add_state(fa.state_name(s));
      if (fa.is_final(s)) out.set_final(*map[s]);
    }
  }
  out.set_initial(*map[fa.initial()]);
  for (const auto& a : fa.arcs())
    if (map[a.src] && map[a.dst] && fwd[a.dst] && bwd[a.dst])
      out.add_transition(*map[a.src], a.label, *map[a.dst]);
  return out;
}

std::vector<Word> enumerate_language(const FiniteAutomaton& fa, std::size_t max_len) {
  const FiniteAutomaton dfa = trim(determinize(fa));
  std::vector<Word> out;
  Word prefix;
  std::function<void(StateId)> walk = [&](StateId s) {
    if (dfa.is_final(s)) out.push_back(prefix);
    if (prefix.size() == max_len) return;
    for (std::size_t i : dfa.out_arcs(s)) {
      const auto& a = dfa.arc(i);
      prefix.push_back(*a.label);
      walk(a.dst);
      prefix.pop_back();
    }
  };
  walk(dfa.initial());
  std::sort(out.begin(), out.end(), ShortLex{});
  return out;
}

std::string LanguageCount::to_string() const {
  return infinite ? std::string("INFINITE") : "FINITE " + count.str();
}

LanguageCount count_language(const FiniteAutomaton& fa) {
  const FiniteAutomaton dfa = trim(determinize(fa));
  const std::size_t n = dfa.num_states();

  enum Color : unsigned char { kWhite, kGrey, kBlack };
  std::vector<Color> color(n, kWhite);
  std::vector<boost::multiprecision::cpp_int> paths(n);
  bool cyclic = false;
  std::function<void(StateId)> visit = [&](StateId s) {
    color[s] = kGrey;
    boost::multiprecision::cpp_int total = dfa.is_final(s) ? 1 : 0;
    for (std::size_t i : dfa.out_arcs(s)) {
      const StateId d = dfa.arc(i).dst;
      if (color[d] == kGrey) {
        cyclic = true;
      } else if (color[d] == kWhite) {
        visit(d);
      }
      if (cyclic) return;
      total += paths[d];
    }
    paths[s] = total;
    color[s] = kBlack;
  };
  visit(dfa.initial());
  if (cyclic) return {true, 0};
  return {false, paths[dfa.initial()]};
}

Transducer identity_transducer(const std::set<Symbol>& alphabet) {
  Transducer t;
  const StateId q = t.add_state("q0");
  t.set_initial(q);
  t.set_final(q);
  for (const auto& sym : alphabet) t.add_transition(q, sym, sym, q);
  return t;
}

Transducer compose(const Transducer& t1, const Transducer& t2) {
  for (const auto& sym : t1.output_alphabet())
    if (!t2.input_alphabet().contains(sym))
      throw ValidationError("compose: output symbol '" + sym.text() +
                            "' of the first transducer is not an input of the second");

  Transducer out;
  for (const auto& s : t1.input_alphabet()) out.add_input_symbol(s);
  for (const auto& s : t2.output_alphabet()) out.add_output_symbol(s);

  using Pair = std::pair<StateId, StateId>;
  std::map<Pair, StateId> ids;
  std::deque<Pair> queue;
  auto intern = [&](Pair p) {
    auto it = ids.find(p);
    if (it != ids.end()) return it->second;
    StateId id = out.add_state(unique_name(
        out, "<" + t1.state_name(p.first) + "," + t2.state_name(p.second) + ">"));
    if (t1.is_final(p.first) && t2.is_final(p.second)) out.set_final(id);
    ids.emplace(p, id);
    queue.push_back(p);
    return id;
  };

  out.set_initial(intern({t1.initial(), t2.initial()}));
  while (!queue.empty()) {
    const auto [p, q] = queue.front();
    queue.pop_front();
    const StateId src = ids.at({p, q});
    for (std::size_t i : t1.out_arcs(p)) {
      const auto& a = t1.arc(i);
      if (!a.label.output) {
        out.add_transition(src, a.label.input, std::nullopt, intern({a.dst, q}));
        continue;
      }
      for (std::size_t j : t2.out_arcs(q)) {
        const auto& b = t2.arc(j);
        if (b.label.input == a.label.output)
          out.add_transition(src, a.label.input, b.label.output, intern({a.dst, b.dst}));
      }
    }
    for (std::size_t j : t2.out_arcs(q)) {
      const auto& b = t2.arc(j);
      if (!b.label.input)
        out.add_transition(src, std::nullopt, b.label.output, intern({p, b.dst}));
    }
  }
  return out;
}

Transduction transduce(const Transducer& t, std::span<const Symbol> input,
                       std::size_t cap) {
  using Config = std::pair<StateId, Word>;
  Transduction result;

  auto close = [&](std::set<Config> configs) {
    std::vector<Config> stack(configs.begin(), configs.end());
    while (!stack.empty()) {
      auto [s, w] = std::move(stack.back());
      stack.pop_back();
      for (std::size_t i : t.out_arcs(s)) {
        const auto& a = t.arc(i);
        if (a.label.input) continue;
        Word next = w;
        if (a.label.output) next.push_back(*a.label.output);
        if (configs.size() >= cap) {
          result.overflow = true;
          return configs;
        }
        if (configs.emplace(a.dst, next).second) stack.emplace_back(a.dst, std::move(next));
      }
    }
    return configs;
  };

  std::set<Config> current = close({{t.initial(), {}}});
  for (std::size_t pos = 0; pos < input.size(); ++pos) {
    const Symbol& sym = input[pos];
    if (!t.input_alphabet().contains(sym)) throw UnknownSymbolError(pos, sym.text());
    std::set<Config> next;
    for (const auto& [s, w] : current)
      for (std::size_t i : t.out_arcs(s)) {
        const auto& a = t.arc(i);
        if (a.label.input != sym) continue;
        Word out = w;
        if (a.label.output) out.push_back(*a.label.output);
        if (next.size() >= cap) {
          result.overflow = true;
          break;
        }
        next.emplace(a.dst, std::move(out));
      }
    current = close(std::move(next));
  }

  std::set<Word, ShortLex> outputs;
  for (const auto& [s, w] : current)
    if (t.is_final(s)) outputs.insert(w);
  result.outputs.assign(outputs.begin(), outputs.end());
  return result;
}

namespace {

std::string valuation_name(const RegisterAutomaton& ra, const Valuation& v) {
  std::string out = "[";
  std::size_t i = 0;
  for (const auto& [reg, _] : ra.registers()) {
    if (i) out += ',';
    out += reg + "=" + (v[i] ? v[i]->text() : std::string("-"));
    ++i;
  }
  return out + "]";
}

using RegConfig = std::pair<StateId, Valuation>;

std::set<RegConfig> register_closure(const RegisterAutomaton& ra, std::set<RegConfig> configs) {
  std::vector<RegConfig> stack(configs.begin(), configs.end());
  while (!stack.empty()) {
    auto [s, v] = std::move(stack.back());
    stack.pop_back();
    for (std::size_t i : ra.out_arcs(s)) {
      const auto& a = ra.arc(i);
      if (a.label.symbol || !ra.satisfies(v, a.label.guards)) continue;
      RegConfig next{a.dst, ra.apply(v, a.label.actions)};
      if (configs.insert(next).second) stack.push_back(std::move(next));
    }
  }
  return configs;
}

std::set<RegConfig> register_step(const RegisterAutomaton& ra,
                                  const std::set<RegConfig>& from, const Symbol& sym) {
  std::set<RegConfig> next;
  for (const auto& [s, v] : from)
    for (std::size_t i : ra.out_arcs(s)) {
      const auto& a = ra.arc(i);
      if (a.label.symbol == sym && ra.satisfies(v, a.label.guards))
        next.emplace(a.dst, ra.apply(v, a.label.actions));
    }
  return register_closure(ra, std::move(next));
}

bool any_accepting(const RegisterAutomaton& ra, const std::set<RegConfig>& configs) {
  return std::any_of(configs.begin(), configs.end(), [&](const RegConfig& c) {
    return ra.is_final(c.first) && ra.satisfies(c.second, ra.final_guards());
  });
}

}  // namespace

FiniteAutomaton expand_registers(const RegisterAutomaton& ra) {
  ra.validate();
  if (ra.registers().empty() && ra.final_guards().empty()) return ra.base();

  FiniteAutomaton out;
  for (const auto& sym : ra.alphabet()) out.add_symbol(sym);
  std::map<RegConfig, StateId> ids;
  std::deque<RegConfig> queue;
  auto intern = [&](const RegConfig& c) {
    auto it = ids.find(c);
    if (it != ids.end()) return it->second;
    StateId id = out.add_state(
        unique_name(out, ra.state_name(c.first) + valuation_name(ra, c.second)));
    if (ra.is_final(c.first) && ra.satisfies(c.second, ra.final_guards()))
      out.set_final(id);
    ids.emplace(c, id);
    queue.push_back(c);
    return id;
  };

  out.set_initial(intern({ra.initial(), ra.empty_valuation()}));
  while (!queue.empty()) {
    RegConfig c = std::move(queue.front());
    queue.pop_front();
    const StateId src = ids.at(c);
    for (std::size_t i : ra.out_arcs(c.first)) {
      const auto& a = ra.arc(i);
      if (!ra.satisfies(c.second, a.label.guards)) continue;
      out.add_transition(src, a.label.symbol,
                         intern({a.dst, ra.apply(c.second, a.label.actions)}));
    }
  }
  return out;
}

bool accepts(const RegisterAutomaton& ra, std::span<const Symbol> input) {
  auto configs = register_closure(ra, {{ra.initial(), ra.empty_valuation()}});
  for (std::size_t pos = 0; pos < input.size(); ++pos) {
    if (!ra.alphabet().contains(input[pos]))
      throw UnknownSymbolError(pos, input[pos].text());
    configs = register_step(ra, configs, input[pos]);
    if (configs.empty()) return false;
  }
  return any_accepting(ra, configs);
}

std::vector<Word> enumerate_language(const RegisterAutomaton& ra, std::size_t max_len) {
  std::vector<Word> out;
  Word prefix;
  std::function<void(const std::set<RegConfig>&)> walk = [&](const std::set<RegConfig>& cs) {
    if (any_accepting(ra, cs)) out.push_back(prefix);
    if (prefix.size() == max_len) return;
    for (const auto& sym : ra.alphabet()) {
      auto next = register_step(ra, cs, sym);
      if (next.empty()) continue;
      prefix.push_back(sym);
      walk(next);
      prefix.pop_back();
    }
  };
  walk(register_closure(ra, {{ra.initial(), ra.empty_valuation()}}));
  std::sort(out.begin(), out.end(), ShortLex{});
  return out;
}

}  // namespace mlg::fsa
