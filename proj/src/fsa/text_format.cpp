#include "mlg/fsa/text_format.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace mlg::fsa {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

// Tokenizes on whitespace; a token starting with '#' begins a comment.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream words(raw);
    std::vector<std::string> tokens;
    std::string tok;
    while (words >> tok) {
      if (tok.front() == '#') break;
      tokens.push_back(tok);
    }
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
  }
  return lines;
}

Symbol symbol_at(const Line& line, const std::string& text) {
  try {
    return Symbol(text);
  } catch (const ValidationError& e) {
    throw ParseError(line.number, e.what());
  }
}

Label label_at(const Line& line, const std::string& text) {
  if (text == kEpsilonText) return std::nullopt;
  return symbol_at(line, text);
}

void expect_arity(const Line& line, std::size_t n, const char* what) {
  if (line.tokens.size() != n)
    throw ParseError(line.number, std::string("expected ") + what);
}

template <class G>
StateId state_at(G& graph, const Line& line, const std::string& name) {
  try {
    return graph.state(name);
  } catch (const ValidationError& e) {
    throw ParseError(line.number, e.what());
  }
}

std::string join_states(const auto& graph, const std::vector<StateId>& ids) {
  std::string out;
  for (StateId s : ids) out += " " + graph.state_name(s);
  return out;
}

std::string join_symbols(const std::set<Symbol>& symbols) {
  std::string out;
  for (const auto& s : symbols) out += " " + s.text();
  return out;
}

template <class G>
void write_graph_header(std::ostringstream& out, const G& graph) {
  std::vector<StateId> all(graph.num_states());
  for (StateId s = 0; s < all.size(); ++s) all[s] = s;
  out << "@states" << join_states(graph, all) << '\n';
}

template <class G>
void write_initial_finals(std::ostringstream& out, const G& graph) {
  out << "@initial " << graph.state_name(graph.initial()) << '\n';
  out << "@finals" << join_states(graph, graph.finals()) << '\n';
}

// Handles @states/@initial/@finals; returns false for other lines.
template <class G>
bool graph_header(G& graph, const Line& line, std::vector<std::pair<Line, std::string>>& deferred_initial) {
  const auto& head = line.tokens.front();
  if (head == "@states") {
    for (std::size_t i = 1; i < line.tokens.size(); ++i) state_at(graph, line, line.tokens[i]);
    return true;
  }
  if (head == "@initial") {
    expect_arity(line, 2, "'@initial <state>'");
    deferred_initial.emplace_back(line, line.tokens[1]);
    return true;
  }
  if (head == "@finals") {
    for (std::size_t i = 1; i < line.tokens.size(); ++i)
      graph.set_final(state_at(graph, line, line.tokens[i]));
    return true;
  }
  return false;
}

template <class G>
void finish_initial(G& graph, const std::vector<std::pair<Line, std::string>>& initial) {
  if (initial.empty()) throw ParseError(0, "missing '@initial' header");
  if (initial.size() > 1) throw ParseError(initial[1].first.number, "duplicate '@initial'");
  graph.set_initial(state_at(graph, initial[0].first, initial[0].second));
}

std::string guard_text(const Guard& g) {
  switch (g.kind) {
    case Guard::Kind::kEqualsValue: return "?" + g.reg + "=" + g.value->text();
    case Guard::Kind::kEqualsRegister: return "?" + g.reg + "==" + g.other;
    case Guard::Kind::kIsSet: return "?" + g.reg;
    case Guard::Kind::kIsUnset: return "?!" + g.reg;
  }
  return "";
}

std::string action_text(const Action& a) {
  return a.kind == Action::Kind::kSet ? "+" + a.reg + "=" + a.value->text() : "-" + a.reg;
}

Guard parse_guard(const Line& line, const std::string& tok) {
  std::string body = tok.substr(1);
  if (body.empty()) throw ParseError(line.number, "empty guard");
  if (body.front() == '!') return Guard::is_unset(body.substr(1));
  if (auto p = body.find("=="); p != std::string::npos)
    return Guard::equals_register(body.substr(0, p), body.substr(p + 2));
  if (auto p = body.find('='); p != std::string::npos)
    return Guard::equals(body.substr(0, p), symbol_at(line, body.substr(p + 1)));
  return Guard::is_set(body);
}

Action parse_action(const Line& line, const std::string& tok) {
  std::string body = tok.substr(1);
  if (tok.front() == '-') return Action::clear(body);
  auto p = body.find('=');
  if (p == std::string::npos) throw ParseError(line.number, "action '" + tok + "' needs a value");
  return Action::set(body.substr(0, p), symbol_at(line, body.substr(p + 1)));
}

}  // namespace

RegularGrammar parse_regular_grammar(std::string_view text) {
  std::optional<Symbol> start;
  Orientation orientation = Orientation::kRight;
  std::vector<Line> rules;
  for (auto& line : tokenize(text)) {
    const auto& head = line.tokens.front();
    if (head == "@start") {
      expect_arity(line, 2, "'@start <symbol>'");
      start = symbol_at(line, line.tokens[1]);
    } else if (head == "@orientation") {
      expect_arity(line, 2, "'@orientation right|left'");
      if (line.tokens[1] == "right")
        orientation = Orientation::kRight;
      else if (line.tokens[1] == "left")
        orientation = Orientation::kLeft;
      else
        throw ParseError(line.number, "orientation must be 'right' or 'left'");
    } else if (head.front() == '@') {
      throw ParseError(line.number, "unknown header '" + head + "'");
    } else {
      if (line.tokens.size() < 3 || line.tokens.size() > 4 || line.tokens[1] != "->")
        throw ParseError(line.number, "expected 'A -> a' or a two-symbol rule");
      rules.push_back(std::move(line));
    }
  }
  if (!start) throw ParseError(0, "missing '@start' header");

  std::set<std::string> lhs_names{start->text()};
  for (const auto& r : rules) lhs_names.insert(r.tokens[0]);

  RegularGrammar g(*start, orientation);
  for (const auto& r : rules) {
    const Symbol lhs = symbol_at(r, r.tokens[0]);
    if (r.tokens.size() == 3) {
      g.add_rule({lhs, symbol_at(r, r.tokens[2]), std::nullopt});
      continue;
    }
    const bool right = orientation == Orientation::kRight;
    const std::string& term = right ? r.tokens[2] : r.tokens[3];
    const std::string& nonterm = right ? r.tokens[3] : r.tokens[2];
    if (lhs_names.contains(term))
      throw ParseError(r.number, "rule branches against the declared " +
                                     to_string(orientation) + " orientation");
    g.add_rule({lhs, symbol_at(r, term), symbol_at(r, nonterm)});
  }
  try {
    g.validate();
  } catch (const ValidationError& e) {
    throw ParseError(0, e.what());
  }
  return g;
}

std::string serialize(const RegularGrammar& g) {
  std::ostringstream out;
  out << "@start " << g.start().text() << '\n';
  out << "@orientation " << to_string(g.orientation()) << '\n';
  for (const auto& r : g.rules()) out << to_string(r, g.orientation()) << '\n';
  return out.str();
}

ContextFreeGrammar parse_context_free_grammar(std::string_view text) {
  std::optional<Symbol> start;
  std::vector<Line> rules;
  for (auto& line : tokenize(text)) {
    const auto& head = line.tokens.front();
    if (head == "@start") {
      expect_arity(line, 2, "'@start <symbol>'");
      start = symbol_at(line, line.tokens[1]);
    } else if (head == "@orientation") {
      // Regular grammar files are valid context-free grammar files.
    } else if (head.front() == '@') {
      throw ParseError(line.number, "unknown header '" + head + "'");
    } else {
      if (line.tokens.size() < 3 || line.tokens[1] != "->")
        throw ParseError(line.number, "expected 'A -> X Y ...'");
      rules.push_back(std::move(line));
    }
  }
  if (!start) throw ParseError(0, "missing '@start' header");
  ContextFreeGrammar g(*start);
  for (const auto& r : rules) {
    std::vector<Symbol> rhs;
    const bool empty = r.tokens.size() == 3 && r.tokens[2] == kEpsilonText;
    if (!empty)
      for (std::size_t i = 2; i < r.tokens.size(); ++i) rhs.push_back(symbol_at(r, r.tokens[i]));
    g.add_rule({symbol_at(r, r.tokens[0]), std::move(rhs)});
  }
  g.finalize_vocabulary();
  return g;
}

std::string serialize(const ContextFreeGrammar& g) {
  std::ostringstream out;
  out << "@start " << g.start().text() << '\n';
  for (const auto& r : g.rules()) {
    out << r.lhs.text() << " ->";
    if (r.rhs.empty()) out << ' ' << kEpsilonText;
    for (const auto& s : r.rhs) out << ' ' << s.text();
    out << '\n';
  }
  return out.str();
}

FiniteAutomaton parse_automaton(std::string_view text) {
  FiniteAutomaton fa;
  std::vector<std::pair<Line, std::string>> initial;
  for (const auto& line : tokenize(text)) {
    if (graph_header(fa, line, initial)) continue;
    const auto& head = line.tokens.front();
    if (head == "@alphabet") {
      for (std::size_t i = 1; i < line.tokens.size(); ++i)
        fa.add_symbol(symbol_at(line, line.tokens[i]));
    } else if (head.front() == '@') {
      throw ParseError(line.number, "unknown header '" + head + "'");
    } else {
      expect_arity(line, 3, "'<src> <label> <dst>'");
      const StateId src = state_at(fa, line, line.tokens[0]);
      const Label label = label_at(line, line.tokens[1]);
      const StateId dst = state_at(fa, line, line.tokens[2]);
      fa.add_transition(src, label, dst);
    }
  }
  finish_initial(fa, initial);
  return fa;
}

std::string serialize(const FiniteAutomaton& fa) {
  std::ostringstream out;
  write_graph_header(out, fa);
  out << "@alphabet" << join_symbols(fa.alphabet()) << '\n';
  write_initial_finals(out, fa);
  for (const auto& a : fa.arcs())
    out << fa.state_name(a.src) << ' ' << to_string(a.label) << ' ' << fa.state_name(a.dst)
        << '\n';
  return out.str();
}

Transducer parse_transducer(std::string_view text) {
  Transducer t;
  std::vector<std::pair<Line, std::string>> initial;
  for (const auto& line : tokenize(text)) {
    if (graph_header(t, line, initial)) continue;
    const auto& head = line.tokens.front();
    if (head == "@input-alphabet") {
      for (std::size_t i = 1; i < line.tokens.size(); ++i)
        t.add_input_symbol(symbol_at(line, line.tokens[i]));
    } else if (head == "@output-alphabet") {
      for (std::size_t i = 1; i < line.tokens.size(); ++i)
        t.add_output_symbol(symbol_at(line, line.tokens[i]));
    } else if (head.front() == '@') {
      throw ParseError(line.number, "unknown header '" + head + "'");
    } else {
      expect_arity(line, 3, "'<src> <in>:<out> <dst>'");
      const auto& label = line.tokens[1];
      const auto colon = label.find(':');
      if (colon == std::string::npos)
        throw ParseError(line.number, "transducer label '" + label + "' lacks ':'");
      const StateId src = state_at(t, line, line.tokens[0]);
      const StateId dst = state_at(t, line, line.tokens[2]);
      t.add_transition(src, label_at(line, label.substr(0, colon)),
                       label_at(line, label.substr(colon + 1)), dst);
    }
  }
  finish_initial(t, initial);
  return t;
}

std::string serialize(const Transducer& t) {
  std::ostringstream out;
  write_graph_header(out, t);
  out << "@input-alphabet" << join_symbols(t.input_alphabet()) << '\n';
  out << "@output-alphabet" << join_symbols(t.output_alphabet()) << '\n';
  write_initial_finals(out, t);
  for (const auto& a : t.arcs())
    out << t.state_name(a.src) << ' ' << to_string(a.label.input) << ':'
        << to_string(a.label.output) << ' ' << t.state_name(a.dst) << '\n';
  return out.str();
}

RegisterAutomaton parse_register_automaton(std::string_view text) {
  RegisterAutomaton ra;
  std::vector<std::pair<Line, std::string>> initial;
  for (const auto& line : tokenize(text)) {
    if (graph_header(ra, line, initial)) continue;
    const auto& head = line.tokens.front();
    if (head == "@alphabet") {
      for (std::size_t i = 1; i < line.tokens.size(); ++i)
        ra.add_symbol(symbol_at(line, line.tokens[i]));
    } else if (head == "@register") {
      if (line.tokens.size() < 3)
        throw ParseError(line.number, "expected '@register NAME v1 v2 ...'");
      std::set<Symbol> domain;
      for (std::size_t i = 2; i < line.tokens.size(); ++i)
        domain.insert(symbol_at(line, line.tokens[i]));
      try {
        ra.declare_register(line.tokens[1], std::move(domain));
      } catch (const ValidationError& e) {
        throw ParseError(line.number, e.what());
      }
    } else if (head == "@final-guards") {
      for (std::size_t i = 1; i < line.tokens.size(); ++i) {
        if (line.tokens[i].front() != '?')
          throw ParseError(line.number, "final guards must start with '?'");
        ra.add_final_guard(parse_guard(line, line.tokens[i]));
      }
    } else if (head.front() == '@') {
      throw ParseError(line.number, "unknown header '" + head + "'");
    } else {
      if (line.tokens.size() < 3)
        throw ParseError(line.number, "expected '<src> <label> <dst> [guards] [actions]'");
      std::vector<Guard> guards;
      std::vector<Action> actions;
      for (std::size_t i = 3; i < line.tokens.size(); ++i) {
        const auto& tok = line.tokens[i];
        if (tok.front() == '?')
          guards.push_back(parse_guard(line, tok));
        else if (tok.front() == '+' || tok.front() == '-')
          actions.push_back(parse_action(line, tok));
        else
          throw ParseError(line.number, "unexpected token '" + tok + "'");
      }
      const StateId src = state_at(ra, line, line.tokens[0]);
      const Label label = label_at(line, line.tokens[1]);
      const StateId dst = state_at(ra, line, line.tokens[2]);
      ra.add_transition(src, label, dst, std::move(guards), std::move(actions));
    }
  }
  finish_initial(ra, initial);
  try {
    ra.validate();
  } catch (const ValidationError& e) {
    throw ParseError(0, e.what());
  }
  return ra;
}

std::string serialize(const RegisterAutomaton& ra) {
  std::ostringstream out;
  write_graph_header(out, ra);
  out << "@alphabet" << join_symbols(ra.alphabet()) << '\n';
  for (const auto& [name, domain] : ra.registers())
    out << "@register " << name << join_symbols(domain) << '\n';
  write_initial_finals(out, ra);
  if (!ra.final_guards().empty()) {
    out << "@final-guards";
    for (const auto& g : ra.final_guards()) out << ' ' << guard_text(g);
    out << '\n';
  }
  for (const auto& a : ra.arcs()) {
    out << ra.state_name(a.src) << ' ' << to_string(a.label.symbol) << ' '
        << ra.state_name(a.dst);
    for (const auto& g : a.label.guards) out << ' ' << guard_text(g);
    for (const auto& act : a.label.actions) out << ' ' << action_text(act);
    out << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("IO", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace mlg::fsa
