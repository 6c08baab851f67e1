#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "mlg/fsa/text_format.hpp"
#include "mlg/rank/rank.hpp"

using namespace mlg;
using namespace mlg::rank;
using fsa::Symbol;

namespace {

std::vector<Symbol> syllables(std::size_t n, std::mt19937& rng) {
  const char* cs[] = {"p", "t", "k"};
  const char* vs[] = {"a", "i", "u"};
  std::uniform_int_distribution<int> d(0, 2);
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(cs[d(rng)]);
    out.emplace_back(vs[d(rng)]);
  }
  return out;
}

std::vector<Symbol> phonemes(const std::string& s) { return fsa::make_word(s); }

void check_streams_well_formed(const ProcessResult& r, std::size_t input_len) {
  for (std::size_t level = 0; level < 6; ++level) {
    const auto& tokens = r.streams[level].tokens;
    const std::size_t below = level == 5 ? input_len : r.streams[level + 1].tokens.size();
    std::size_t prev_end = 0;
    for (const auto& t : tokens) {
      CHECK(t.start >= prev_end);
      CHECK(t.start < t.end);
      CHECK(t.end <= below);
      prev_end = t.end;
    }
  }
}

fsa::FiniteAutomaton loop(const std::string& sym) {
  fsa::FiniteAutomaton fa;
  fa.set_initial(fa.add_state("L0"));
  fa.add_state("L1");
  fa.set_final(1);
  fa.add_transition(0, Symbol(sym), 1);
  fa.add_transition(1, Symbol(sym), 1);
  return fa;
}

}  // namespace

TEST_SUITE("rank") {
  TEST_CASE("rank names") {
    for (auto r : kRanks) CHECK(parse_rank(to_string(r)) == r);
    CHECK_THROWS_AS(parse_rank("CLAUSE"), ValidationError);
    CHECK(index_of(Rank::kDiscourse) < index_of(Rank::kPhoneme));
  }

  TEST_CASE("toy architecture is strictly layered") {
    const auto report = validate_layering(toy_architecture());
    CHECK(report.ok);
    CHECK(report.violations.empty());
  }

  TEST_CASE("manifest fixture matches the built-in toy architecture") {
    const auto dir = std::filesystem::path(MLG_FIXTURES) / "toy_arch";
    for (const auto& [name, text] : toy_manifest_files())
      CHECK(fsa::read_file((dir / name).string()) == text);
    const auto arch = load_manifest((dir / "toy.manifest").string());
    CHECK(validate_layering(arch).ok);
    const auto input = phonemes("p a t i k u p a t a");
    CHECK(serialize_streams(process_incremental(arch, input).streams) ==
          serialize_streams(process_incremental(toy_architecture(), input).streams));
  }

  TEST_CASE("manifest errors") {
    CHECK_THROWS_AS(parse_manifest("tau x.fsa\n", "."), ParseError);
    CHECK_THROWS_AS(parse_manifest("[CLAUSE]\n", "."), ParseError);
    CHECK_THROWS_AS(parse_manifest("[WORD]\n[WORD]\n", "."), ParseError);
    CHECK_THROWS_AS(parse_manifest("[WORD]\nfrobnicate\n", "."), ParseError);
    CHECK_THROWS_AS(parse_manifest("[WORD]\n", "."), ValidationError);
  }

  TEST_CASE("manifest with a grammar tau") {
    const auto dir = std::filesystem::temp_directory_path() / "mlg_rank_rg";
    std::filesystem::create_directories(dir);
    auto files = toy_manifest_files();
    files["word.rg"] = "@start W\nW -> SYL X\nX -> SYL\n";
    auto& m = files["toy.manifest"];
    m.replace(m.find("tau word.fsa\nemit W"), 19, "tau word.rg");
    for (const auto& [name, text] : files) std::ofstream(dir / name) << text;
    const auto arch = load_manifest((dir / "toy.manifest").string());
    CHECK(arch.at(Rank::kWord).emit == std::optional<std::string>("W"));
    CHECK(validate_layering(arch).ok);
    const auto r = process_incremental(arch, phonemes("p a t i"));
    REQUIRE(r.streams[index_of(Rank::kWord)].tokens.size() == 1);
    CHECK(r.streams[index_of(Rank::kWord)].tokens[0].symbol == "W");
  }

  TEST_CASE("non-adjacent ranks are violations unless whitelisted") {
    auto arch = toy_architecture();
    auto& phrase = arch.triples[index_of(Rank::kPhrase)];
    phrase.tau.add_transition(phrase.tau.initial(), Symbol("SYL"), 1);
    auto report = validate_layering(arch);
    CHECK_FALSE(report.ok);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].rank == Rank::kPhrase);
    CHECK(report.violations[0].symbol == "SYL");
    CHECK(report.violations[0].message.find("MORPHEME") != std::string::npos);

    phrase.allowed.insert("SYL");
    CHECK(validate_layering(arch).ok);

    auto upward = toy_architecture();
    auto& word = upward.triples[index_of(Rank::kWord)];
    word.tau.add_transition(word.tau.initial(), Symbol("PH"), 1);
    CHECK_FALSE(validate_layering(upward).ok);

    auto unknown = toy_architecture();
    auto& u = unknown.triples[index_of(Rank::kUtterance)];
    u.tau.add_transition(u.tau.initial(), Symbol("XYZ"), 1);
    const auto r = validate_layering(unknown);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].message == "not a category of PHRASE");
  }

  TEST_CASE("intra-rank iteration is allowed") {
    auto arch = toy_architecture();
    auto& phrase = arch.triples[index_of(Rank::kPhrase)];
    phrase.tau = loop("W");
    CHECK(validate_layering(arch).ok);
  }

  TEST_CASE("coverage gaps are warnings") {
    auto arch = toy_architecture();
    arch.triples[index_of(Rank::kWord)].sigma["SYL"] = "syllable";
    arch.triples[index_of(Rank::kMorpheme)].sigma["C"] = "onset";
    const auto r = validate_layering(arch);
    CHECK(r.ok);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("MORPHEME") == 0);
  }

  TEST_CASE("missing or misordered ranks") {
    auto arch = toy_architecture();
    arch.triples.pop_back();
    CHECK_THROWS_AS(validate_layering(arch), ValidationError);
    auto swapped = toy_architecture();
    std::swap(swapped.triples[0], swapped.triples[1]);
    CHECK_THROWS_AS(swapped.check_structure(), ValidationError);
  }

  TEST_CASE("cascade output on a small input") {
    const auto r = process_incremental(toy_architecture(), phonemes("p a t i k u p a"));
    CHECK(serialize_streams(r.streams) ==
          "DISCOURSE\tD\t0\t1\n"
          "UTTERANCE\tU\t0\t1\n"
          "PHRASE\tPH\t0\t2\n"
          "WORD\tW\t0\t2\n"
          "WORD\tW\t2\t4\n"
          "MORPHEME\tSYL\t0\t2\n"
          "MORPHEME\tSYL\t2\t4\n"
          "MORPHEME\tSYL\t4\t6\n"
          "MORPHEME\tSYL\t6\t8\n"
          "PHONEME\tC\t0\t1\n"
          "PHONEME\tV\t1\t2\n"
          "PHONEME\tC\t2\t3\n"
          "PHONEME\tV\t3\t4\n"
          "PHONEME\tC\t4\t5\n"
          "PHONEME\tV\t5\t6\n"
          "PHONEME\tC\t6\t7\n"
          "PHONEME\tV\t7\t8\n");
    CHECK(r.diagnostics.empty());
  }

  TEST_CASE("unparseable input gives a diagnostic and a gap") {
    const auto r = process_incremental(toy_architecture(), phonemes("p a x t i"));
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].rank == Rank::kPhoneme);
    CHECK(r.diagnostics[0].position == 2);
    CHECK(r.diagnostics[0].symbol == "x");
    const auto& ph = r.streams[index_of(Rank::kPhoneme)].tokens;
    REQUIRE(ph.size() == 5);
    CHECK(ph[2] == Token{std::string(kGapSymbol), 2, 3});
    const auto& syl = r.streams[index_of(Rank::kMorpheme)].tokens;
    REQUIRE(syl.size() == 2);
    CHECK(syl[1] == Token{"SYL", 3, 5});
    check_streams_well_formed(r, 5);
  }

  TEST_CASE("random inputs keep streams monotone and non-overlapping") {
    std::mt19937 rng(7);
    const char* alphabet[] = {"p", "t", "k", "a", "i", "u", "x"};
    std::uniform_int_distribution<int> d(0, 6);
    std::uniform_int_distribution<std::size_t> len(0, 60);
    for (int i = 0; i < 200; ++i) {
      std::vector<Symbol> in;
      const std::size_t n = len(rng);
      for (std::size_t j = 0; j < n; ++j) in.emplace_back(alphabet[d(rng)]);
      const auto r = process_incremental(toy_architecture(), in);
      CHECK(r.streams[index_of(Rank::kPhoneme)].tokens.size() == n);
      check_streams_well_formed(r, n);
    }
  }

  TEST_CASE("well-formed input parses without diagnostics") {
    std::mt19937 rng(9);
    for (std::size_t syl = 2; syl <= 40; syl += 2) {
      const auto in = syllables(syl, rng);
      const auto r = process_incremental(toy_architecture(), in);
      CHECK(r.diagnostics.empty());
      CHECK(r.streams[index_of(Rank::kWord)].tokens.size() == syl / 2);
      CHECK(r.streams[index_of(Rank::kPhrase)].tokens.size() == (syl / 2 + 1) / 2);
      CHECK(r.streams[index_of(Rank::kDiscourse)].tokens.size() ==
            r.streams[index_of(Rank::kPhrase)].tokens.size());
    }
  }

  TEST_CASE("per-symbol work is bounded and total work is linear") {
    std::mt19937 rng(13);
    std::size_t bound = 0;
    for (std::size_t syl : {5u, 50u, 500u, 5000u}) {
      const auto in = syllables(syl, rng);
      const auto r = process_incremental(toy_architecture(), in);
      const auto& inst = r.instrumentation;
      CHECK(inst.per_symbol_steps.size() == in.size());
      const std::size_t max_step =
          *std::max_element(inst.per_symbol_steps.begin(), inst.per_symbol_steps.end());
      if (bound == 0) bound = max_step;
      CHECK(max_step == bound);
      CHECK(inst.total_steps <= bound * in.size() + inst.flush_steps);
    }
  }

  TEST_CASE("memory watermark does not grow with input length") {
    std::mt19937 rng(15);
    std::set<std::size_t> marks;
    for (std::size_t n : {10u, 100u, 1000u, 10000u}) {
      const auto r = process_incremental(toy_architecture(), syllables(n / 2, rng));
      marks.insert(r.instrumentation.max_memory_cells);
    }
    CHECK(marks.size() == 1);
    CHECK(*marks.begin() > Session::kIdleCells);
  }

  TEST_CASE("pending cap forces decisions on unbounded iteration") {
    auto arch = toy_architecture();
    arch.triples[index_of(Rank::kPhrase)].tau = loop("W");
    std::mt19937 rng(19);
    std::set<std::size_t> marks;
    for (std::size_t n : {100u, 1000u}) {
      const auto r = process_incremental(arch, syllables(n, rng), 4);
      CHECK(r.instrumentation.buffer_overflows > 0);
      marks.insert(r.instrumentation.max_memory_cells);
      for (const auto& t : r.streams[index_of(Rank::kPhrase)].tokens) CHECK(t.end - t.start <= 4);
    }
    CHECK(marks.size() == 1);
    CHECK_THROWS_AS(Session(arch, 0), ValidationError);
  }

  TEST_CASE("session is incremental") {
    Session s(toy_architecture());
    CHECK(s.memory_cells() == Session::kIdleCells);
    for (const auto& p : phonemes("p a t i")) s.feed(p);
    CHECK(s.streams()[index_of(Rank::kWord)].tokens.size() == 1);
    CHECK(s.streams()[index_of(Rank::kPhrase)].tokens.empty());
    s.finish();
    CHECK(s.streams()[index_of(Rank::kPhrase)].tokens.size() == 1);
  }

  TEST_CASE("stream serialization") {
    const auto r = process_incremental(toy_architecture(), phonemes("p a x t i"));
    const std::string text = serialize_streams(r.streams);
    const auto back = parse_streams(text);
    CHECK(serialize_streams(back) == text);
    CHECK_THROWS_AS(parse_streams("WORD\tW\t0\n"), ParseError);
    CHECK_THROWS_AS(parse_streams("WORD\tW\t2\t1\n"), ParseError);
    CHECK_THROWS_AS(parse_streams("WORD\tW\t0\t2\nWORD\tW\t1\t3\n"), ParseError);
    CHECK_THROWS_AS(parse_streams("WORD\tW\t0\t2\nPHRASE\tP\t0\t1\nWORD\tW\t2\t3\n"), ParseError);
  }

  TEST_CASE("multilinear alignment") {
    Stream words{Rank::kWord, {{"W", 0, 2}, {"W", 2, 5}}};
    Stream tones{Rank::kWord, {{"H", 0, 1}, {"L", 1, 3}, {"H", 4, 5}}};
    const auto a = multilinear_align(words, tones);
    REQUIRE(a.size() == 2);
    CHECK(a[0].secondary == std::vector<std::size_t>{0, 1});
    CHECK(a[1].secondary == std::vector<std::size_t>{1, 2});
    Stream other{Rank::kPhrase, {}};
    CHECK_THROWS_AS(multilinear_align(words, other), DomainError);
  }
}
