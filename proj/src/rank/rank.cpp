#include "mlg/rank/rank.hpp"

#include <filesystem>
#include <sstream>

#include "mlg/fsa/algorithms.hpp"
#include "mlg/fsa/grammar.hpp"
#include "mlg/fsa/text_format.hpp"

namespace mlg::rank {

namespace {

constexpr std::array<std::string_view, 6> kRankNames = {"DISCOURSE", "UTTERANCE", "PHRASE",
                                                        "WORD",      "MORPHEME",  "PHONEME"};

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) {
    if (t.front() == '#') break;
    out.push_back(t);
  }
  return out;
}

}  // namespace

std::string to_string(Rank r) { return std::string(kRankNames[index_of(r)]); }

Rank parse_rank(std::string_view text) {
  for (std::size_t i = 0; i < kRankNames.size(); ++i)
    if (kRankNames[i] == text) return kRanks[i];
  throw ValidationError("unknown rank '" + std::string(text) + "'");
}

std::string RankTriple::category_at(const std::string& state_name) const {
  if (auto it = units.find(state_name); it != units.end()) return it->second;
  if (emit) return *emit;
  return state_name;
}

std::set<std::string> RankTriple::emitted_categories() const {
  std::set<std::string> out = categories;
  for (const auto& [state, cat] : units) out.insert(cat);
  if (emit) out.insert(*emit);
  if (out.empty())
    for (auto s : tau.finals()) out.insert(tau.state_name(s));
  return out;
}

void RankArchitecture::check_structure() const {
  for (std::size_t i = 0; i < kRanks.size(); ++i) {
    if (i >= triples.size() || triples[i].rank != kRanks[i])
      throw ValidationError("missing rank " + to_string(kRanks[i]));
  }
  if (triples.size() != kRanks.size()) throw ValidationError("more than six ranks");
}

const RankTriple& RankArchitecture::at(Rank r) const {
  check_structure();
  return triples[index_of(r)];
}

LayeringReport validate_layering(const RankArchitecture& arch) {
  arch.check_structure();
  LayeringReport report;
  std::array<std::set<std::string>, 6> cats;
  for (std::size_t i = 0; i < 6; ++i) cats[i] = arch.triples[i].emitted_categories();

  for (std::size_t i = 0; i < 6; ++i) {
    const RankTriple& t = arch.triples[i];
    const std::string name = to_string(t.rank);
    std::vector<std::string> unlabeled, uninterpreted;
    for (const auto& sym : t.tau.alphabet()) {
      const std::string& s = sym.text();
      if (!t.sigma.empty() && !t.sigma.contains(s)) unlabeled.push_back(s);
      if (t.phi && !t.phi->input_alphabet().contains(sym)) uninterpreted.push_back(s);
      if (i + 1 == 6) continue;  // raw input
      if (cats[i + 1].contains(s) || t.allowed.contains(s)) continue;
      std::string message = "not a category of " + to_string(kRanks[i + 1]);
      for (std::size_t j = 0; j < 6; ++j)
        if (j != i + 1 && cats[j].contains(s)) {
          message = "category of non-adjacent rank " + to_string(kRanks[j]);
          break;
        }
      report.violations.push_back({t.rank, s, message});
    }
    auto warn = [&](const std::vector<std::string>& v, const std::string& what) {
      if (v.empty()) return;
      std::string list;
      for (const auto& s : v) list += (list.empty() ? "" : " ") + s;
      report.warnings.push_back(name + ": " + what + ": " + list);
    };
    warn(unlabeled, "sigma has no label for");
    warn(uninterpreted, "phi does not interpret");
  }
  report.ok = report.violations.empty();
  return report;
}

RankArchitecture parse_manifest(std::string_view text, const std::string& base_dir) {
  std::array<std::optional<RankTriple>, 6> slots;
  RankTriple* cur = nullptr;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  auto path_of = [&](const std::string& f) {
    return (std::filesystem::path(base_dir) / f).string();
  };
  while (std::getline(in, line)) {
    ++number;
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0].front() == '[') {
      if (tok.size() != 1 || tok[0].back() != ']') throw ParseError(number, "expected '[RANK]'");
      Rank r;
      try {
        r = parse_rank(tok[0].substr(1, tok[0].size() - 2));
      } catch (const ValidationError& e) {
        throw ParseError(number, e.what());
      }
      auto& slot = slots[index_of(r)];
      if (slot) throw ParseError(number, "duplicate section " + to_string(r));
      slot.emplace();
      slot->rank = r;
      cur = &*slot;
      continue;
    }
    if (!cur) throw ParseError(number, "directive outside a [RANK] section");
    const std::string& key = tok[0];
    auto need = [&](std::size_t n) {
      if (tok.size() < n) throw ParseError(number, "'" + key + "' needs more arguments");
    };
    if (key == "tau") {
      need(2);
      const std::string file = path_of(tok[1]);
      if (std::filesystem::path(file).extension() == ".rg") {
        const auto g = fsa::parse_regular_grammar(fsa::read_file(file));
        cur->tau = fsa::grammar_to_automaton(g);
        for (const auto& n : g.nonterminals()) cur->categories.insert(n.text());
        if (!cur->emit) cur->emit = g.start().text();
      } else {
        cur->tau = fsa::parse_automaton(fsa::read_file(file));
      }
    } else if (key == "phi") {
      need(2);
      cur->phi = fsa::parse_transducer(fsa::read_file(path_of(tok[1])));
    } else if (key == "emit") {
      need(2);
      cur->emit = tok[1];
    } else if (key == "unit") {
      need(3);
      cur->units[tok[1]] = tok[2];
    } else if (key == "category") {
      need(2);
      cur->categories.insert(tok[1]);
    } else if (key == "sigma") {
      need(3);
      std::string label;
      for (std::size_t i = 2; i < tok.size(); ++i) label += (i > 2 ? " " : "") + tok[i];
      cur->sigma[tok[1]] = label;
    } else if (key == "allow") {
      need(2);
      cur->allowed.insert(tok[1]);
    } else {
      throw ParseError(number, "unknown directive '" + key + "'");
    }
  }
  RankArchitecture arch;
  for (std::size_t i = 0; i < 6; ++i) {
    if (!slots[i]) throw ValidationError("missing rank " + to_string(kRanks[i]));
    arch.triples.push_back(std::move(*slots[i]));
  }
  return arch;
}

RankArchitecture load_manifest(const std::string& path) {
  return parse_manifest(fsa::read_file(path),
                        std::filesystem::path(path).parent_path().string());
}

namespace {

// Chain s0 -a1-> s1 -a2-> ... with finals at the given positions.
fsa::FiniteAutomaton chain(const std::string& prefix, const std::vector<std::string>& symbols,
                           const std::vector<std::size_t>& finals) {
  fsa::FiniteAutomaton fa;
  fa.set_initial(fa.add_state(prefix + "0"));
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const auto dst = fa.add_state(prefix + std::to_string(i + 1));
    fa.add_transition(i, fsa::Symbol(symbols[i]), dst);
  }
  for (auto f : finals) fa.set_final(f);
  return fa;
}

}  // namespace

RankArchitecture toy_architecture() {
  RankArchitecture arch;
  auto add = [&](Rank r, fsa::FiniteAutomaton tau, std::optional<std::string> emit) {
    RankTriple t;
    t.rank = r;
    t.tau = std::move(tau);
    t.emit = std::move(emit);
    arch.triples.push_back(std::move(t));
  };
  add(Rank::kDiscourse, chain("D", {"U"}, {1}), "D");
  add(Rank::kUtterance, chain("U", {"PH"}, {1}), "U");
  add(Rank::kPhrase, chain("H", {"W", "W"}, {1, 2}), "PH");
  add(Rank::kWord, chain("W", {"SYL", "SYL"}, {2}), "W");
  add(Rank::kMorpheme, chain("M", {"C", "V"}, {2}), "SYL");

  fsa::FiniteAutomaton phon;
  const auto p0 = phon.add_state("P0");
  const auto pc = phon.add_state("PC");
  const auto pv = phon.add_state("PV");
  phon.set_initial(p0);
  phon.set_final(pc);
  phon.set_final(pv);
  for (const char* c : {"p", "t", "k"}) phon.add_transition(p0, fsa::Symbol(c), pc);
  for (const char* v : {"a", "i", "u"}) phon.add_transition(p0, fsa::Symbol(v), pv);
  RankTriple t;
  t.rank = Rank::kPhoneme;
  t.tau = std::move(phon);
  t.units = {{"PC", "C"}, {"PV", "V"}};
  arch.triples.push_back(std::move(t));
  return arch;
}

std::map<std::string, std::string> toy_manifest_files() {
  const RankArchitecture arch = toy_architecture();
  std::map<std::string, std::string> files;
  std::string manifest;
  for (const auto& t : arch.triples) {
    std::string name = to_string(t.rank);
    for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const std::string file = name + ".fsa";
    files[file] = fsa::serialize(t.tau);
    manifest += "[" + to_string(t.rank) + "]\n";
    manifest += "tau " + file + "\n";
    if (t.emit) manifest += "emit " + *t.emit + "\n";
    for (const auto& [state, cat] : t.units) manifest += "unit " + state + " " + cat + "\n";
    manifest += "\n";
  }
  files["toy.manifest"] = manifest;
  return files;
}

// ---- Streams --------------------------------------------------------------

std::string serialize_streams(std::span<const Stream> streams) {
  std::string out;
  for (const auto& s : streams)
    for (const auto& t : s.tokens)
      out += to_string(s.rank) + "\t" + t.symbol + "\t" + std::to_string(t.start) + "\t" +
             std::to_string(t.end) + "\n";
  return out;
}

std::vector<Stream> parse_streams(std::string_view text) {
  std::vector<Stream> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> f;
    std::istringstream fields(line);
    for (std::string x; std::getline(fields, x, '\t');) f.push_back(x);
    if (f.size() != 4) throw ParseError(number, "expected 'rank<TAB>symbol<TAB>start<TAB>end'");
    Rank r;
    Token t;
    try {
      r = parse_rank(f[0]);
      t = {f[1], std::stoul(f[2]), std::stoul(f[3])};
    } catch (const std::exception& e) {
      throw ParseError(number, e.what());
    }
    if (t.symbol.empty()) throw ParseError(number, "empty symbol");
    if (t.end < t.start) throw ParseError(number, "end before start");
    if (out.empty() || out.back().rank != r) {
      for (const auto& s : out)
        if (s.rank == r) throw ParseError(number, "rank " + f[0] + " is not contiguous");
      out.push_back({r, {}});
    }
    auto& tokens = out.back().tokens;
    if (!tokens.empty() && t.start < tokens.back().end)
      throw ParseError(number, "token overlaps its predecessor");
    tokens.push_back(std::move(t));
  }
  return out;
}

// ---- Incremental processing ----------------------------------------------

Session::Session(const RankArchitecture& arch, std::size_t pending_cap)
    : pending_cap_(pending_cap) {
  arch.check_structure();
  if (pending_cap_ == 0) throw ValidationError("pending cap must be positive");
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& t = arch.triples[i];
    tau_.push_back(t.tau.is_deterministic() ? t.tau : fsa::determinize(t.tau));
    triples_.push_back(t);
    cursor_[i].state = tau_[i].initial();
    result_.streams[i].rank = kRanks[i];
  }
  watermark();
}

std::size_t Session::memory_cells() const {
  std::size_t cells = 0;
  for (const auto& c : cursor_) cells += 2 + c.pending;
  return cells;
}

void Session::watermark() {
  auto& inst = result_.instrumentation;
  inst.max_memory_cells = std::max(inst.max_memory_cells, memory_cells());
}

void Session::feed(const fsa::Symbol& phoneme) {
  const std::size_t steps = push(5, phoneme.text(), input_position_++);
  auto& inst = result_.instrumentation;
  inst.per_symbol_steps.push_back(steps);
  inst.total_steps += steps;
  watermark();
}

std::size_t Session::push(std::size_t level, const std::string& symbol, std::size_t position) {
  const auto& fa = tau_[level];
  Cursor& c = cursor_[level];
  std::size_t steps = 1;
  std::optional<fsa::StateId> next;
  for (std::size_t a : fa.out_arcs(c.state)) {
    const auto& arc = fa.arc(a);
    if (arc.label && arc.label->text() == symbol) {
      next = arc.dst;
      break;
    }
  }

  if (next) {
    if (c.pending == 0) c.start = position;
    c.state = *next;
    ++c.pending;
    watermark();
    if (fa.is_final(c.state) && fa.out_arcs(c.state).empty())
      return steps + emit(level, triples_[level].category_at(fa.state_name(c.state)), position + 1);
    if (c.pending >= pending_cap_) {
      ++result_.instrumentation.buffer_overflows;
      if (fa.is_final(c.state))
        return steps + emit(level, triples_[level].category_at(fa.state_name(c.state)), position + 1);
      return steps + gap(level, position + 1);
    }
    return steps;
  }

  if (c.pending > 0 && fa.is_final(c.state)) {
    steps += emit(level, triples_[level].category_at(fa.state_name(c.state)), position);
    return steps + push(level, symbol, position);
  }
  result_.diagnostics.push_back({kRanks[level], position, fa.state_name(c.state), symbol});
  if (c.pending > 0) {
    steps += gap(level, position);
    return steps + push(level, symbol, position);
  }
  c.start = position;
  return steps + gap(level, position + 1);
}

std::size_t Session::emit(std::size_t level, const std::string& symbol, std::size_t end) {
  Cursor& c = cursor_[level];
  auto& tokens = result_.streams[level].tokens;
  tokens.push_back({symbol, c.start, end});
  c = Cursor{tau_[level].initial(), 0, 0};
  if (level == 0) return 0;
  return push(level - 1, symbol, tokens.size() - 1);
}

std::size_t Session::gap(std::size_t level, std::size_t end) {
  Cursor& c = cursor_[level];
  result_.streams[level].tokens.push_back({std::string(kGapSymbol), c.start, end});
  c = Cursor{tau_[level].initial(), 0, 0};
  return 0;
}

std::size_t Session::flush(std::size_t level) {
  Cursor& c = cursor_[level];
  if (c.pending == 0) return 0;
  const auto& fa = tau_[level];
  const std::size_t end = level == 5 ? input_position_ : result_.streams[level + 1].tokens.size();
  if (fa.is_final(c.state))
    return emit(level, triples_[level].category_at(fa.state_name(c.state)), end);
  result_.diagnostics.push_back({kRanks[level], end, fa.state_name(c.state), "<end>"});
  return gap(level, end);
}

void Session::finish() {
  auto& inst = result_.instrumentation;
  for (std::size_t level = 6; level-- > 0;) {
    const std::size_t steps = flush(level);
    inst.flush_steps += steps;
    inst.total_steps += steps;
    watermark();
  }
}

ProcessResult process_incremental(const RankArchitecture& arch, std::span<const fsa::Symbol> input,
                                  std::size_t pending_cap) {
  Session s(arch, pending_cap);
  for (const auto& sym : input) s.feed(sym);
  s.finish();
  return s.result();
}

std::vector<AlignedToken> multilinear_align(const Stream& primary, const Stream& secondary) {
  if (primary.rank != secondary.rank)
    throw DomainError("BASE_MISMATCH", "streams at " + to_string(primary.rank) + " and " +
                                           to_string(secondary.rank) + " do not share a base");
  auto overlaps = [](const Token& p, const Token& s) {
    if (s.start == s.end) return p.start <= s.start && s.start < p.end;
    if (p.start == p.end) return s.start <= p.start && p.start < s.end;
    return p.start < s.end && s.start < p.end;
  };
  std::vector<AlignedToken> out;
  for (std::size_t i = 0; i < primary.tokens.size(); ++i) {
    AlignedToken a{i, {}};
    for (std::size_t j = 0; j < secondary.tokens.size(); ++j)
      if (overlaps(primary.tokens[i], secondary.tokens[j])) a.secondary.push_back(j);
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace mlg::rank
