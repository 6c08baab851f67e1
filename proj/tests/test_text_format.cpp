#include <doctest.h>

#include <filesystem>
#include <random>

#include "mlg/fragments/fragments.hpp"
#include "mlg/fsa/algorithms.hpp"
#include "mlg/fsa/text_format.hpp"
#include "mlg/tone/tone.hpp"
#include "oracles.hpp"

using namespace mlg;
using namespace mlg::fsa;

namespace {

std::string fixture(const std::string& name) {
  return read_file((std::filesystem::path(MLG_FIXTURES) / name).string());
}

std::string reserialize(const std::string& ext, const std::string& text) {
  if (ext == "rg") return serialize(parse_regular_grammar(text));
  if (ext == "cfg") return serialize(parse_context_free_grammar(text));
  if (ext == "fsa") return serialize(parse_automaton(text));
  if (ext == "fst") return serialize(parse_transducer(text));
  if (ext == "ra") return serialize(parse_register_automaton(text));
  FAIL("unknown extension " << ext);
  return {};
}

}  // namespace

TEST_SUITE("text_format") {
  TEST_CASE("every fragment fixture matches its generator byte for byte") {
    for (const auto& f : fragments::registry()) {
      CAPTURE(f.name);
      const std::string text = fixture(f.name + "." + f.extension);
      CHECK(text == f.emit());
      CHECK(reserialize(f.extension, text) == text);
    }
  }

  TEST_CASE("regular grammar format") {
    const auto g = parse_regular_grammar(
        "# comment line\n@start A\n@orientation right\nA -> very A  # trailing\nA -> big\n");
    CHECK(g.rules().size() == 2);
    CHECK(g.orientation() == Orientation::kRight);
    const auto left = parse_regular_grammar("@start A\n@orientation left\nA -> A very\nA -> big\n");
    CHECK(left.orientation() == Orientation::kLeft);
    CHECK(parse_regular_grammar(serialize(left)) == left);

    CHECK_THROWS_AS(parse_regular_grammar("A -> big\n"), ParseError);
    CHECK_THROWS_AS(parse_regular_grammar("@start A\nA -> A very\n"), ParseError);
    CHECK_THROWS_AS(parse_regular_grammar("@start A\nA => big\n"), ParseError);
    try {
      parse_regular_grammar("@start A\nA -> big\nA big\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }

  TEST_CASE("context-free grammar format") {
    const auto g = parse_context_free_grammar("@start S\nS -> a S a\nS -> b\nS -> _\n");
    CHECK(g.rules().size() == 3);
    CHECK(g.rules()[2].rhs.empty());
    CHECK(parse_context_free_grammar(serialize(g)) == g);
  }

  TEST_CASE("automaton format") {
    const std::string text =
        "@states q0 q1\n@alphabet a b\n@initial q0\n@finals q1\nq0 a q1\nq1 _ q0\n";
    const auto fa = parse_automaton(text);
    CHECK(fa.has_epsilon());
    CHECK(serialize(fa) == text);
    CHECK_THROWS_AS(parse_automaton("@states q0\nq0 a q0\n"), ParseError);
    CHECK_THROWS_AS(parse_automaton("@initial q0\n@initial q1\n"), ParseError);
    CHECK_THROWS_AS(parse_automaton("@initial q0\nq0 a\n"), ParseError);
  }

  TEST_CASE("transducer and register formats") {
    const auto t = tone::tem_transducer();
    CHECK(parse_transducer(serialize(t)) == t);
    const auto ra = fragments::wh_dependency();
    const auto back = parse_register_automaton(serialize(ra));
    CHECK(serialize(back) == serialize(ra));
    CHECK_THROWS_AS(parse_register_automaton("@initial s\n@finals s\ns a s ?R=v\n"), Error);
  }

  TEST_CASE("random automata round trip") {
    std::mt19937 rng(41);
    for (int i = 0; i < 100; ++i) {
      const auto fa = oracle::random_nfa(rng);
      const std::string text = serialize(fa);
      CHECK(serialize(parse_automaton(text)) == text);
      const auto ra = oracle::random_register(rng);
      const std::string rtext = serialize(ra);
      CHECK(serialize(parse_register_automaton(rtext)) == rtext);
    }
  }

  TEST_CASE("missing files raise IO errors") {
    try {
      read_file("/nonexistent/file.fsa");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == "IO");
    }
  }
}
