#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlg/fsa/automaton.hpp"

namespace mlg::rank {

// Top to bottom.
enum class Rank { kDiscourse, kUtterance, kPhrase, kWord, kMorpheme, kPhoneme };
inline constexpr std::array<Rank, 6> kRanks = {Rank::kDiscourse, Rank::kUtterance,
                                               Rank::kPhrase,    Rank::kWord,
                                               Rank::kMorpheme,  Rank::kPhoneme};
inline constexpr std::size_t index_of(Rank r) { return static_cast<std::size_t>(r); }
std::string to_string(Rank r);
Rank parse_rank(std::string_view text);

// tau: structure; sigma: opaque semantic labels; phi: prosodic-phonetic
// interpretation.
struct RankTriple {
  Rank rank = Rank::kPhoneme;
  fsa::FiniteAutomaton tau;
  std::map<std::string, std::string> units;  // final state -> category
  std::optional<std::string> emit;           // category for other final states
  std::set<std::string> categories;          // further declared categories
  std::map<std::string, std::string> sigma;
  std::optional<fsa::Transducer> phi;
  std::set<std::string> allowed;  // whitelisted cross-rank symbols

  // Category emitted on reaching the final state of that name.
  std::string category_at(const std::string& state_name) const;
  std::set<std::string> emitted_categories() const;
};

struct RankArchitecture {
  std::vector<RankTriple> triples;  // one per rank, top to bottom

  // Throws ValidationError unless there is exactly one triple per rank in
  // order.
  void check_structure() const;
  const RankTriple& at(Rank r) const;
};

struct LayeringViolation {
  Rank rank;
  std::string symbol;
  std::string message;
};

struct LayeringReport {
  bool ok = true;
  std::vector<LayeringViolation> violations;
  std::vector<std::string> warnings;
};

// Every terminal of tau at rank i must be a category of the rank directly
// below; PHONEME terminals are raw input.
LayeringReport validate_layering(const RankArchitecture& arch);

// Manifest: one `[RANK]` section per rank with lines
//   tau FILE        (.rg grammar or automaton text)
//   phi FILE        (transducer text)
//   emit CATEGORY
//   unit STATE CATEGORY
//   category CATEGORY
//   sigma SYMBOL LABEL...
//   allow SYMBOL
// File names are relative to `base_dir`.
RankArchitecture parse_manifest(std::string_view text, const std::string& base_dir);
RankArchitecture load_manifest(const std::string& path);

// Six-rank cascade over phonemes p t k a i u: C V -> SYL, SYL SYL -> W,
// W W? -> PH, PH -> U, U -> D.
RankArchitecture toy_architecture();
// The same architecture in manifest form: file name -> contents.
std::map<std::string, std::string> toy_manifest_files();

// ---- Streams --------------------------------------------------------------

inline constexpr std::string_view kGapSymbol = "<gap>";

struct Token {
  std::string symbol;
  std::size_t start = 0;  // half-open span over the stream below
  std::size_t end = 0;
  friend bool operator==(const Token&, const Token&) = default;
};

struct Stream {
  Rank rank = Rank::kPhoneme;
  std::vector<Token> tokens;
  friend bool operator==(const Stream&, const Stream&) = default;
};

// `rank<TAB>symbol<TAB>start<TAB>end`
std::string serialize_streams(std::span<const Stream> streams);
std::vector<Stream> parse_streams(std::string_view text);

struct Diagnostic {
  Rank rank;
  std::size_t position;  // index in the stream below (raw input for PHONEME)
  std::string state;
  std::string symbol;
};

struct Instrumentation {
  std::vector<std::size_t> per_symbol_steps;
  std::size_t flush_steps = 0;
  std::size_t total_steps = 0;
  std::size_t max_memory_cells = 0;
  std::size_t buffer_overflows = 0;
};

struct ProcessResult {
  std::array<Stream, 6> streams;  // indexed by index_of(rank)
  Instrumentation instrumentation;
  std::vector<Diagnostic> diagnostics;
};

inline constexpr std::size_t kDefaultPendingCap = 8;

// Incremental cascade. Each rank runs its automaton on the tokens of the
// rank below, emitting a token at the longest match visible with one
// symbol of lookahead. An unparseable symbol yields a diagnostic and a gap
// token; the rank restarts from its initial state. Gap tokens are not fed
// upward.
class Session {
 public:
  explicit Session(const RankArchitecture& arch, std::size_t pending_cap = kDefaultPendingCap);

  void feed(const fsa::Symbol& phoneme);
  // Flushes every rank, bottom up.
  void finish();

  const std::array<Stream, 6>& streams() const noexcept { return result_.streams; }
  const Instrumentation& instrumentation() const noexcept { return result_.instrumentation; }
  const std::vector<Diagnostic>& diagnostics() const noexcept { return result_.diagnostics; }
  ProcessResult result() const { return result_; }

  // 2 cells (state, start index) per rank plus the pending tokens.
  std::size_t memory_cells() const;
  static constexpr std::size_t kIdleCells = 12;

 private:
  struct Cursor {
    fsa::StateId state = 0;
    std::size_t start = 0;
    std::size_t pending = 0;
  };

  std::size_t push(std::size_t level, const std::string& symbol, std::size_t position);
  std::size_t emit(std::size_t level, const std::string& symbol, std::size_t end);
  std::size_t gap(std::size_t level, std::size_t end);
  std::size_t flush(std::size_t level);
  void watermark();

  std::vector<fsa::FiniteAutomaton> tau_;  // determinized, by rank index
  std::vector<RankTriple> triples_;
  std::array<Cursor, 6> cursor_{};
  std::size_t pending_cap_;
  std::size_t input_position_ = 0;
  ProcessResult result_;
};

ProcessResult process_incremental(const RankArchitecture& arch, std::span<const fsa::Symbol> input,
                                  std::size_t pending_cap = kDefaultPendingCap);

struct AlignedToken {
  std::size_t primary;                  // index into primary.tokens
  std::vector<std::size_t> secondary;   // overlapping secondary tokens
};
// Both streams must share a base, i.e. have the same rank.
std::vector<AlignedToken> multilinear_align(const Stream& primary, const Stream& secondary);

}  // namespace mlg::rank
