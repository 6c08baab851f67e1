#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mlg/fsa/automaton.hpp"
#include "mlg/fsa/grammar.hpp"
#include "mlg/fsa/regex.hpp"

namespace mlg::fragments {

enum class Language { kEnglish, kGerman };
Language parse_language(std::string_view text);  // EN | DE

// Table 1: A -> very A | big | small.
fsa::RegularGrammar table1_grammar();

// ---- English auxiliary ----------------------------------------------------

inline const std::vector<std::string> kModals = {"can", "may", "shall", "will", "must"};

// TENSE MODAL? PERF? PROG? PASS? V
struct AuxMorphemeString {
  std::string tense;  // pres | past
  std::optional<std::string> modal;
  bool perf = false;
  bool prog = false;
  bool pass = false;
  std::string verb = "V";

  friend bool operator==(const AuxMorphemeString&, const AuxMorphemeString&) = default;
};

void validate(const AuxMorphemeString& m);
// Category symbols: the verb becomes V.
fsa::Word to_categories(const AuxMorphemeString& m);
// `past may PERF PROG PASS repair`
AuxMorphemeString parse_aux(std::string_view text);
std::string to_string(const AuxMorphemeString& m);
// All 96 combinations with the given verb.
std::vector<AuxMorphemeString> all_aux(const std::string& verb = "V");

// Acyclic automaton over pres past can may shall will must PERF PROG PASS V.
fsa::FiniteAutomaton english_aux();

// Each affix attaches to the following verbal element: `migh+t have be+en
// be+ing repair+ed`.
std::vector<std::string> affix_hop(const AuxMorphemeString& m);

// ---- Agreement ------------------------------------------------------------

// Token symbols are categories with features joined by `_`:
//   EN: DET ADJ N_<PERSON>_<NUMBER> PRON_<PERSON>_<NUMBER> V_<PERSON>_<NUMBER>
//   DE: DET_<CASE>_<GENDER>_<NUMBER> ADJ_... N_... V_<PERSON>_<NUMBER>
// German nouns are third person.
fsa::RegisterAutomaton agreement_automaton(Language lang);

inline const std::vector<std::string> kPersons = {"1", "2", "3"};
inline const std::vector<std::string> kNumbers = {"SG", "PL"};
inline const std::vector<std::string> kCases = {"NOM", "ACC", "DAT", "GEN"};
inline const std::vector<std::string> kGenders = {"M", "F", "N"};

// ---- Discourse ------------------------------------------------------------

// Q A C? (Q A C?)*
fsa::FiniteAutomaton adjacency_pairs();
inline constexpr std::string_view kAdjacencyRegex = "Q A C? (Q A C?)*";

// OPEN_CHANT DIALOGUE+ CLOSE_CHANT; German also allows
// REPAIR_CHANT DIALOGUE+ before the close.
fsa::FiniteAutomaton chant_schema(Language lang);

// ---- Word formation -------------------------------------------------------

// One state, initial and final, with a loop per vocabulary item.
fsa::FiniteAutomaton kleene_vocab(const std::set<std::string>& vocab);
// Splits each whitespace-separated word into vocabulary items, longest
// item first; nullopt when some word cannot be split.
std::optional<std::vector<std::string>> segment(std::string_view text,
                                                const std::set<std::string>& vocab);

// Includes `anti`.
std::set<std::string> prefix_vocabulary();
std::set<std::string> compound_vocabulary();

std::uint64_t blend_count(std::uint64_t onsets, std::uint64_t nuclei);
// Onset slot O1..On followed by nucleus slot N1..Nm.
fsa::FiniteAutomaton blend_automaton(std::size_t onsets, std::size_t nuclei);

// ---- Iteration ------------------------------------------------------------

enum class IterationKind {
  kConjunctionSyndetic,
  kConjunctionAsyndetic,
  kApposition,
  kReduplication,
  kRepetition,
  kListing,
  kSuccession,
};
IterationKind parse_iteration_kind(std::string_view text);
std::string to_string(IterationKind k);

struct IterationParams {
  std::vector<std::string> items;
  std::optional<std::string> conjunction;  // default `and`; `then` for succession
  std::string separator = ",";
  bool syndetic = true;  // listing only
};
//   CONJUNCTION_SYNDETIC  X (and X)*
//   CONJUNCTION_ASYNDETIC X (, X)*
//   APPOSITION            X (, X)+
//   REDUPLICATION         x x+ for each item x
//   REPETITION            x (, x)+ for each item x
//   LISTING               X ((, X)* and X)?   or X (, X)* when asyndetic
//   SUCCESSION            consecutive items in the given order, comma-separated
fsa::Regex iteration_template(IterationKind kind, const IterationParams& p);

// ---- Long-distance dependencies ------------------------------------------

// Registers x, y, z over {FILLED}. WH_r fills r, GAP_r discharges it, w is
// any other word; WH and GAP are aliases for WH_x and GAP_x.
fsa::RegisterAutomaton wh_dependency();

enum class CrossSerialReason { kNone, kAmbiguous, kBoundExceeded };
std::string to_string(CrossSerialReason r);

struct CrossSerialVerdict {
  bool ok = false;
  CrossSerialReason reason = CrossSerialReason::kNone;
  // i-th members of each list, when ok.
  std::vector<std::vector<std::string>> tuples;
};
CrossSerialVerdict cross_serial_check(const std::vector<std::vector<std::string>>& lists,
                                      std::size_t bound = 3);

// ---- Clause templates -----------------------------------------------------

// Subject, verb and at most two post-verbal objects, optional adverb.
fsa::ContextFreeGrammar saad_clause();
// S -> a S a | b
fsa::ContextFreeGrammar centre_embedding();

// ---- Registry -------------------------------------------------------------

struct FragmentInfo {
  std::string name;
  std::string extension;  // rg cfg fsa fst ra
  std::string description;
  std::function<std::string()> emit;
};
const std::vector<FragmentInfo>& registry();
const FragmentInfo& find_fragment(std::string_view name);

}  // namespace mlg::fragments
