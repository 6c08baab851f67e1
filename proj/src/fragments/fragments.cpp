#include "mlg/fragments/fragments.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mlg/fsa/text_format.hpp"
#include "mlg/tone/tone.hpp"

namespace mlg::fragments {

using fsa::Action;
using fsa::Guard;
using fsa::Regex;
using fsa::Symbol;

Language parse_language(std::string_view text) {
  if (text == "EN" || text == "en") return Language::kEnglish;
  if (text == "DE" || text == "de") return Language::kGerman;
  throw ValidationError("unknown language '" + std::string(text) + "' (EN or DE)");
}

fsa::RegularGrammar table1_grammar() {
  fsa::RegularGrammar g(Symbol("A"), fsa::Orientation::kRight);
  g.add_rule("A", "very", "A");
  g.add_rule("A", "big");
  g.add_rule("A", "small");
  return g;
}

// ---- English auxiliary ----------------------------------------------------

void validate(const AuxMorphemeString& m) {
  if (m.tense != "pres" && m.tense != "past")
    throw ValidationError("tense must be 'pres' or 'past', got '" + m.tense + "'");
  if (m.modal && std::find(kModals.begin(), kModals.end(), *m.modal) == kModals.end())
    throw ValidationError("unknown modal '" + *m.modal + "'");
  if (!fsa::is_valid_symbol_text(m.verb)) throw ValidationError("invalid verb '" + m.verb + "'");
}

fsa::Word to_categories(const AuxMorphemeString& m) {
  validate(m);
  fsa::Word w{Symbol(m.tense)};
  if (m.modal) w.emplace_back(*m.modal);
  if (m.perf) w.emplace_back("PERF");
  if (m.prog) w.emplace_back("PROG");
  if (m.pass) w.emplace_back("PASS");
  w.emplace_back("V");
  return w;
}

AuxMorphemeString parse_aux(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(t);
  if (tok.size() < 2) throw ValidationError("expected 'TENSE [MODAL] [PERF] [PROG] [PASS] VERB'");
  AuxMorphemeString m;
  m.tense = tok.front();
  m.verb = tok.back();
  int slot = 0;  // 1 modal, 2 perf, 3 prog, 4 pass
  for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
    int s = 0;
    if (std::find(kModals.begin(), kModals.end(), tok[i]) != kModals.end()) {
      s = 1;
      m.modal = tok[i];
    } else if (tok[i] == "PERF") {
      s = 2;
      m.perf = true;
    } else if (tok[i] == "PROG") {
      s = 3;
      m.prog = true;
    } else if (tok[i] == "PASS") {
      s = 4;
      m.pass = true;
    } else {
      throw ValidationError("unexpected '" + tok[i] + "' in auxiliary sequence");
    }
    if (s <= slot) throw ValidationError("'" + tok[i] + "' is out of order");
    slot = s;
  }
  validate(m);
  return m;
}

std::string to_string(const AuxMorphemeString& m) {
  std::string out = m.tense;
  if (m.modal) out += " " + *m.modal;
  if (m.perf) out += " PERF";
  if (m.prog) out += " PROG";
  if (m.pass) out += " PASS";
  return out + " " + m.verb;
}

std::vector<AuxMorphemeString> all_aux(const std::string& verb) {
  std::vector<AuxMorphemeString> out;
  std::vector<std::optional<std::string>> modals{std::nullopt};
  for (const auto& m : kModals) modals.emplace_back(m);
  for (const char* tense : {"pres", "past"})
    for (const auto& modal : modals)
      for (int bits = 0; bits < 8; ++bits)
        out.push_back({tense, modal, (bits & 4) != 0, (bits & 2) != 0, (bits & 1) != 0, verb});
  return out;
}

fsa::FiniteAutomaton english_aux() {
  fsa::FiniteAutomaton fa;
  const auto s0 = fa.add_state("S0");
  const auto tense = fa.add_state("S_TENSE");
  const auto modal = fa.add_state("S_MODAL");
  const auto perf = fa.add_state("S_PERF");
  const auto prog = fa.add_state("S_PROG");
  const auto pass = fa.add_state("S_PASS");
  const auto verb = fa.add_state("S_V");
  fa.set_initial(s0);
  fa.set_final(verb);
  fa.add_transition(s0, Symbol("pres"), tense);
  fa.add_transition(s0, Symbol("past"), tense);
  for (const auto& m : kModals) fa.add_transition(tense, Symbol(m), modal);
  for (auto from : {tense, modal}) fa.add_transition(from, Symbol("PERF"), perf);
  for (auto from : {tense, modal, perf}) fa.add_transition(from, Symbol("PROG"), prog);
  for (auto from : {tense, modal, perf, prog}) fa.add_transition(from, Symbol("PASS"), pass);
  for (auto from : {tense, modal, perf, prog, pass}) fa.add_transition(from, Symbol("V"), verb);
  return fa;
}

namespace {

enum class Element { kModal, kHave, kBe, kVerb };

std::string realize(Element e, const std::string& stem, const std::string& affix) {
  if (affix.empty()) return stem;
  switch (e) {
    case Element::kModal: {
      if (affix == "pres") return stem;
      static const std::map<std::string, std::string> past = {
          {"can", "coul+d"}, {"may", "migh+t"}, {"shall", "shoul+d"}, {"will", "woul+d"}};
      auto it = past.find(stem);
      return it != past.end() ? it->second : stem + "+past";
    }
    case Element::kHave:
      return affix == "pres" ? "ha+s" : affix == "past" ? "ha+d" : "have+" + affix;
    case Element::kBe:
      if (affix == "pres") return "i+s";
      if (affix == "past") return "wa+s";
      return "be+" + affix;
    case Element::kVerb: {
      static const std::map<std::pair<std::string, std::string>, std::string> irregular = {
          {{"go", "past"}, "wen+t"}, {{"go", "en"}, "go+en"}, {{"go", "pres"}, "go+es"}};
      if (auto it = irregular.find({stem, affix}); it != irregular.end()) return it->second;
      if (affix == "pres") return stem + "+s";
      if (affix == "past" || affix == "en") return stem + "+ed";
      return stem + "+" + affix;
    }
  }
  return stem;
}

}  // namespace

std::vector<std::string> affix_hop(const AuxMorphemeString& m) {
  validate(m);
  struct Item {
    Element kind;
    std::string stem;
    std::string passes_on;  // affix for the next verbal element
  };
  std::vector<Item> items;
  if (m.modal) items.push_back({Element::kModal, *m.modal, ""});
  if (m.perf) items.push_back({Element::kHave, "have", "en"});
  if (m.prog) items.push_back({Element::kBe, "be", "ing"});
  if (m.pass) items.push_back({Element::kBe, "be", "en"});
  items.push_back({Element::kVerb, m.verb, ""});

  std::vector<std::string> out;
  std::string affix = m.tense;
  for (const auto& it : items) {
    out.push_back(realize(it.kind, it.stem, affix));
    affix = it.passes_on;
  }
  return out;
}

// ---- Agreement ------------------------------------------------------------

fsa::RegisterAutomaton agreement_automaton(Language lang) {
  fsa::RegisterAutomaton ra;
  auto domain = [](const std::vector<std::string>& values) {
    std::set<Symbol> d;
    for (const auto& v : values) d.emplace(v);
    return d;
  };
  ra.declare_register("PERSON", domain(kPersons));
  ra.declare_register("NUMBER", domain(kNumbers));
  if (lang == Language::kGerman) {
    ra.declare_register("CASE", domain(kCases));
    ra.declare_register("GENDER", domain(kGenders));
  }
  const auto s0 = ra.add_state("S0");
  const auto nominal = ra.add_state("S_NOMINAL");
  const auto subject = ra.add_state("S_SUBJ");
  const auto clause = ra.add_state("S_CLAUSE");
  ra.set_initial(s0);
  ra.set_final(clause);

  for (const auto& p : kPersons)
    for (const auto& n : kNumbers)
      ra.add_transition(subject, Symbol("V_" + p + "_" + n), clause,
                        {Guard::equals("PERSON", Symbol(p)), Guard::equals("NUMBER", Symbol(n))});

  if (lang == Language::kEnglish) {
    ra.add_transition(s0, Symbol("DET"), nominal);
    ra.add_transition(s0, Symbol("ADJ"), nominal);
    ra.add_transition(nominal, Symbol("ADJ"), nominal);
    for (const auto& n : kNumbers) {
      const Symbol noun("N_3_" + n);
      const std::vector<Action> set{Action::set("PERSON", Symbol("3")),
                                    Action::set("NUMBER", Symbol(n))};
      ra.add_transition(s0, noun, subject, {}, set);
      ra.add_transition(nominal, noun, subject, {}, set);
    }
    for (const auto& p : kPersons)
      for (const auto& n : kNumbers)
        ra.add_transition(s0, Symbol("PRON_" + p + "_" + n), subject, {},
                          {Action::set("PERSON", Symbol(p)), Action::set("NUMBER", Symbol(n))});
    return ra;
  }

  for (const auto& c : kCases)
    for (const auto& g : kGenders)
      for (const auto& n : kNumbers) {
        const std::string f = "_" + c + "_" + g + "_" + n;
        const std::vector<Guard> same{Guard::equals("CASE", Symbol(c)),
                                      Guard::equals("GENDER", Symbol(g)),
                                      Guard::equals("NUMBER", Symbol(n))};
        const std::vector<Action> set{Action::set("CASE", Symbol(c)),
                                      Action::set("GENDER", Symbol(g)),
                                      Action::set("NUMBER", Symbol(n))};
        auto with_person = set;
        with_person.push_back(Action::set("PERSON", Symbol("3")));
        ra.add_transition(s0, Symbol("DET" + f), nominal, {}, set);
        ra.add_transition(s0, Symbol("ADJ" + f), nominal, {}, set);
        ra.add_transition(nominal, Symbol("ADJ" + f), nominal, same);
        ra.add_transition(s0, Symbol("N" + f), subject, {}, with_person);
        ra.add_transition(nominal, Symbol("N" + f), subject, same,
                          {Action::set("PERSON", Symbol("3"))});
      }
  return ra;
}

// ---- Discourse ------------------------------------------------------------

fsa::FiniteAutomaton adjacency_pairs() {
  fsa::FiniteAutomaton fa;
  const auto start = fa.add_state("S0");
  const auto asked = fa.add_state("ASKED");
  const auto answered = fa.add_state("ANSWERED");
  const auto confirmed = fa.add_state("CONFIRMED");
  fa.set_initial(start);
  fa.set_final(answered);
  fa.set_final(confirmed);
  const Symbol q("Q"), a("A"), c("C");
  fa.add_transition(start, q, asked);
  fa.add_transition(asked, a, answered);
  fa.add_transition(answered, c, confirmed);
  fa.add_transition(answered, q, asked);
  fa.add_transition(confirmed, q, asked);
  return fa;
}

fsa::FiniteAutomaton chant_schema(Language lang) {
  fsa::FiniteAutomaton fa;
  const auto start = fa.add_state("S0");
  const auto opened = fa.add_state("OPENED");
  const auto talk = fa.add_state("DIALOGUE");
  const auto closed = fa.add_state("CLOSED");
  fa.set_initial(start);
  fa.set_final(closed);
  const Symbol open("OPEN_CHANT"), dialogue("DIALOGUE"), repair("REPAIR_CHANT"),
      close("CLOSE_CHANT");
  fa.add_symbol(repair);
  fa.add_transition(start, open, opened);
  fa.add_transition(opened, dialogue, talk);
  fa.add_transition(talk, dialogue, talk);
  fa.add_transition(talk, close, closed);
  if (lang == Language::kGerman) {
    const auto repairing = fa.add_state("REPAIR");
    fa.add_transition(talk, repair, repairing);
    fa.add_transition(repairing, dialogue, talk);
  }
  return fa;
}

// ---- Word formation -------------------------------------------------------

fsa::FiniteAutomaton kleene_vocab(const std::set<std::string>& vocab) {
  if (vocab.empty()) throw ValidationError("vocabulary must not be empty");
  fsa::FiniteAutomaton fa;
  const auto v = fa.add_state("V");
  fa.set_initial(v);
  fa.set_final(v);
  for (const auto& item : vocab) fa.add_transition(v, Symbol(item), v);
  return fa;
}

std::optional<std::vector<std::string>> segment(std::string_view text,
                                                const std::set<std::string>& vocab) {
  std::vector<std::string> items(vocab.begin(), vocab.end());
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string word; in >> word;) {
    std::vector<bool> dead(word.size() + 1, false);
    std::vector<std::string> parts;
    auto split = [&](auto&& self, std::size_t pos) -> bool {
      if (pos == word.size()) return true;
      if (dead[pos]) return false;
      for (const auto& item : items) {
        if (item.empty() || word.compare(pos, item.size(), item) != 0) continue;
        parts.push_back(item);
        if (self(self, pos + item.size())) return true;
        parts.pop_back();
      }
      dead[pos] = true;
      return false;
    };
    if (!split(split, 0)) return std::nullopt;
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

std::set<std::string> prefix_vocabulary() {
  return {"anti", "over", "post", "pre", "pro", "trans", "un"};
}

std::set<std::string> compound_vocabulary() {
  return {"cam", "cycle", "cylinder", "head", "motor", "over", "shaft", "twin"};
}

std::uint64_t blend_count(std::uint64_t onsets, std::uint64_t nuclei) {
  if (onsets != 0 && nuclei > UINT64_MAX / onsets)
    throw DomainError("OVERFLOW", "blend count overflows 64 bits");
  return onsets * nuclei;
}

fsa::FiniteAutomaton blend_automaton(std::size_t onsets, std::size_t nuclei) {
  fsa::FiniteAutomaton fa;
  const auto s0 = fa.add_state("ONSET");
  const auto s1 = fa.add_state("NUCLEUS");
  const auto s2 = fa.add_state("END");
  fa.set_initial(s0);
  fa.set_final(s2);
  for (std::size_t i = 1; i <= onsets; ++i) fa.add_transition(s0, Symbol("O" + std::to_string(i)), s1);
  for (std::size_t i = 1; i <= nuclei; ++i) fa.add_transition(s1, Symbol("N" + std::to_string(i)), s2);
  return fa;
}

// ---- Iteration ------------------------------------------------------------

namespace {

const std::vector<std::pair<IterationKind, std::string>> kIterationNames = {
    {IterationKind::kConjunctionSyndetic, "CONJUNCTION_SYNDETIC"},
    {IterationKind::kConjunctionAsyndetic, "CONJUNCTION_ASYNDETIC"},
    {IterationKind::kApposition, "APPOSITION"},
    {IterationKind::kReduplication, "REDUPLICATION"},
    {IterationKind::kRepetition, "REPETITION"},
    {IterationKind::kListing, "LISTING"},
    {IterationKind::kSuccession, "SUCCESSION"},
};

}  // namespace

IterationKind parse_iteration_kind(std::string_view text) {
  for (const auto& [k, name] : kIterationNames)
    if (name == text) return k;
  throw ValidationError("unknown iteration kind '" + std::string(text) + "'");
}

std::string to_string(IterationKind k) {
  for (const auto& [kind, name] : kIterationNames)
    if (kind == k) return name;
  return "?";
}

Regex iteration_template(IterationKind kind, const IterationParams& p) {
  if (p.items.empty()) throw ValidationError("iteration template needs at least one item");
  std::vector<Regex> alts;
  for (const auto& item : p.items) alts.push_back(Regex::sym(item));
  const Regex x = alts.size() == 1 ? alts.front() : Regex::alt(alts);
  const Regex sep = Regex::sym(p.separator);
  const Regex conj = Regex::sym(p.conjunction.value_or(
      kind == IterationKind::kSuccession ? "then" : "and"));

  switch (kind) {
    case IterationKind::kConjunctionSyndetic:
      return Regex::concat({x, Regex::star(Regex::concat({conj, x}))});
    case IterationKind::kConjunctionAsyndetic:
      return Regex::concat({x, Regex::star(Regex::concat({sep, x}))});
    case IterationKind::kApposition:
      return Regex::concat({x, Regex::plus(Regex::concat({sep, x}))});
    case IterationKind::kReduplication: {
      std::vector<Regex> out;
      for (const auto& i : alts) out.push_back(Regex::concat({i, Regex::plus(i)}));
      return out.size() == 1 ? out.front() : Regex::alt(out);
    }
    case IterationKind::kRepetition: {
      std::vector<Regex> out;
      for (const auto& i : alts) out.push_back(Regex::concat({i, Regex::plus(Regex::concat({sep, i}))}));
      return out.size() == 1 ? out.front() : Regex::alt(out);
    }
    case IterationKind::kListing:
      if (!p.syndetic) return Regex::concat({x, Regex::star(Regex::concat({sep, x}))});
      return Regex::concat(
          {x, Regex::optional(Regex::concat({Regex::star(Regex::concat({sep, x})), conj, x}))});
    case IterationKind::kSuccession: {
      // Runs of consecutive items starting anywhere in the sequence.
      std::vector<Regex> runs;
      Regex tail = alts.back();
      runs.push_back(tail);
      for (std::size_t k = alts.size() - 1; k-- > 0;) {
        tail = Regex::concat({alts[k], Regex::optional(Regex::concat({sep, tail}))});
        runs.push_back(tail);
      }
      std::reverse(runs.begin(), runs.end());
      return runs.size() == 1 ? runs.front() : Regex::alt(runs);
    }
  }
  return Regex::empty_set();
}

// ---- Long-distance dependencies ------------------------------------------

fsa::RegisterAutomaton wh_dependency() {
  fsa::RegisterAutomaton ra;
  const Symbol filled("FILLED");
  for (const char* r : {"x", "y", "z"}) ra.declare_register(r, {filled});
  const auto s = ra.add_state("S");
  ra.set_initial(s);
  ra.set_final(s);
  ra.add_transition(s, Symbol("w"), s);
  for (const std::string r : {"x", "y", "z"}) {
    ra.add_transition(s, Symbol("WH_" + r), s, {Guard::is_unset(r)}, {Action::set(r, filled)});
    ra.add_transition(s, Symbol("GAP_" + r), s, {Guard::is_set(r)}, {Action::clear(r)});
  }
  ra.add_transition(s, Symbol("WH"), s, {Guard::is_unset("x")}, {Action::set("x", filled)});
  ra.add_transition(s, Symbol("GAP"), s, {Guard::is_set("x")}, {Action::clear("x")});
  for (const char* r : {"x", "y", "z"}) ra.add_final_guard(Guard::is_unset(r));
  return ra;
}

std::string to_string(CrossSerialReason r) {
  switch (r) {
    case CrossSerialReason::kNone: return "NONE";
    case CrossSerialReason::kAmbiguous: return "AMBIGUOUS";
    case CrossSerialReason::kBoundExceeded: return "BOUND_EXCEEDED";
  }
  return "?";
}

CrossSerialVerdict cross_serial_check(const std::vector<std::vector<std::string>>& lists,
                                      std::size_t bound) {
  if (lists.size() < 2) throw ValidationError("cross-serial check needs at least two lists");
  CrossSerialVerdict v;
  for (const auto& l : lists)
    if (l.size() > bound) {
      v.reason = CrossSerialReason::kBoundExceeded;
      return v;
    }
  for (const auto& l : lists)
    if (l.size() != lists.front().size()) {
      v.reason = CrossSerialReason::kAmbiguous;
      return v;
    }
  v.ok = true;
  for (std::size_t i = 0; i < lists.front().size(); ++i) {
    std::vector<std::string> tuple;
    for (const auto& l : lists) tuple.push_back(l[i]);
    v.tuples.push_back(std::move(tuple));
  }
  return v;
}

// ---- Clause templates -----------------------------------------------------

fsa::ContextFreeGrammar saad_clause() {
  return fsa::parse_context_free_grammar(R"(@start S
S -> NP VP
S -> NP VP ADV
VP -> V
VP -> V NP
VP -> V NP NP
NP -> DET N
NP -> NAME
DET -> the
N -> chair
N -> architect
NAME -> Jack
NAME -> Mary
NAME -> Camembert
V -> gave
V -> slept
V -> designed
ADV -> yesterday
)");
}

fsa::ContextFreeGrammar centre_embedding() {
  return fsa::parse_context_free_grammar("@start S\nS -> a S a\nS -> b\n");
}

// ---- Registry -------------------------------------------------------------

const std::vector<FragmentInfo>& registry() {
  static const std::vector<FragmentInfo> kRegistry = [] {
    using fsa::serialize;
    std::vector<FragmentInfo> r;
    r.push_back({"table1", "rg", "A -> very A | big | small",
                 [] { return serialize(table1_grammar()); }});
    r.push_back({"table1_fsa", "fsa", "automaton of the table1 grammar",
                 [] { return serialize(fsa::grammar_to_automaton(table1_grammar())); }});
    r.push_back({"english_aux", "fsa", "English tense, modal, aspect and voice sequence",
                 [] { return serialize(english_aux()); }});
    r.push_back({"adjacency_pairs", "fsa", "question-answer-confirmation exchanges",
                 [] { return serialize(adjacency_pairs()); }});
    r.push_back({"chant_en", "fsa", "English chant schema",
                 [] { return serialize(chant_schema(Language::kEnglish)); }});
    r.push_back({"chant_de", "fsa", "German chant schema with repair",
                 [] { return serialize(chant_schema(Language::kGerman)); }});
    r.push_back({"prefix_vocab", "fsa", "prefix sequences",
                 [] { return serialize(kleene_vocab(prefix_vocabulary())); }});
    r.push_back({"compound_vocab", "fsa", "compound constituents",
                 [] { return serialize(kleene_vocab(compound_vocabulary())); }});
    r.push_back({"blend", "fsa", "56 onsets by 549 nuclei",
                 [] { return serialize(blend_automaton(56, 549)); }});
    r.push_back({"listing", "fsa", "syndetic listing of three names", [] {
                   IterationParams p;
                   p.items = {"Fitzgerald", "Dietrich", "LadyGaga"};
                   return serialize(fsa::regex_compile(iteration_template(IterationKind::kListing, p)));
                 }});
    r.push_back({"agreement_en", "ra", "English subject-verb agreement",
                 [] { return serialize(agreement_automaton(Language::kEnglish)); }});
    r.push_back({"agreement_de", "ra", "German nominal and subject-verb agreement",
                 [] { return serialize(agreement_automaton(Language::kGerman)); }});
    r.push_back({"wh_dependency", "ra", "filler-gap registers x, y, z",
                 [] { return serialize(wh_dependency()); }});
    r.push_back({"tem", "fst", "Tem tone terracing", [] { return serialize(tone::tem_transducer()); }});
    r.push_back({"saad_clause", "cfg", "simple clause, at most two objects",
                 [] { return serialize(saad_clause()); }});
    r.push_back({"centre_embedding", "cfg", "S -> a S a | b",
                 [] { return serialize(centre_embedding()); }});
    return r;
  }();
  return kRegistry;
}

const FragmentInfo& find_fragment(std::string_view name) {
  for (const auto& f : registry())
    if (f.name == name) return f;
  throw DomainError("UNKNOWN_FRAGMENT", "no fragment named '" + std::string(name) + "'");
}

}  // namespace mlg::fragments
