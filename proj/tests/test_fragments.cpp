#include <doctest.h>

#include <map>

#include "mlg/fragments/fragments.hpp"
#include "mlg/fsa/algorithms.hpp"
#include "mlg/fsa/regex.hpp"
#include "oracles.hpp"

using namespace mlg;
using namespace mlg::fragments;
using fsa::Symbol;
using fsa::Word;
using oracle::word;

namespace {

bool accepted(const fsa::FiniteAutomaton& fa, const std::string& s) {
  return oracle::nfa_accepts(fa, word(s));
}

bool ra_accepted(const fsa::RegisterAutomaton& ra, const std::string& s) {
  return oracle::ra_accepts(ra, word(s));
}

}  // namespace

TEST_SUITE("fragments") {
  TEST_CASE("english auxiliary has 96 members") {
    const auto fa = english_aux();
    CHECK(fsa::count_language(fa).to_string() == "FINITE 96");
    CHECK(oracle::path_count(fa) == 96);
    const auto all = all_aux();
    CHECK(all.size() == 96);
    std::set<Word> distinct;
    for (const auto& m : all) {
      const Word w = to_categories(m);
      CHECK(oracle::nfa_accepts(fa, w));
      distinct.insert(w);
      // TENSE, up to four auxiliaries, V
      CHECK(w.size() - 2 <= 4);
    }
    CHECK(distinct.size() == 96);
    CHECK(std::set<Word>(distinct) == oracle::language(fa, 6));
  }

  TEST_CASE("auxiliary ordering") {
    const auto fa = english_aux();
    CHECK(accepted(fa, "past may PERF PROG PASS V"));
    CHECK_FALSE(accepted(fa, "past PROG PERF V"));
    CHECK_FALSE(accepted(fa, "may past V"));
    CHECK_FALSE(accepted(fa, "past can must V"));
    CHECK_THROWS_AS(parse_aux("past PROG PERF repair"), Error);
    CHECK_THROWS_AS(parse_aux("future repair"), Error);
    CHECK(to_string(parse_aux("past may PERF PROG PASS repair")) == "past may PERF PROG PASS repair");
  }

  TEST_CASE("affix hopping") {
    using V = std::vector<std::string>;
    CHECK(affix_hop(parse_aux("past may PERF PROG PASS repair")) ==
          V{"migh+t", "have", "be+en", "be+ing", "repair+ed"});
    CHECK(affix_hop(parse_aux("pres walk")) == V{"walk+s"});
    CHECK(affix_hop(parse_aux("past PERF go")) == V{"ha+d", "go+en"});
    CHECK(affix_hop(parse_aux("pres PROG walk")) == V{"i+s", "walk+ing"});
    CHECK(affix_hop(parse_aux("past PASS walk")) == V{"wa+s", "walk+ed"});
    CHECK(affix_hop(parse_aux("pres can walk")) == V{"can", "walk"});
  }

  TEST_CASE("affix hopping is injective on the 96 strings") {
    std::map<std::vector<std::string>, std::string> seen;
    for (const auto& m : all_aux("repair")) {
      const auto out = affix_hop(m);
      CHECK(out.size() == to_categories(m).size() - 1);
      const auto [it, fresh] = seen.emplace(out, to_string(m));
      CHECK_MESSAGE(fresh, to_string(m) << " collides with " << it->second);
    }
    CHECK(seen.size() == 96);
  }

  TEST_CASE("english agreement") {
    const auto ra = agreement_automaton(Language::kEnglish);
    CHECK(ra_accepted(ra, "DET N_3_SG V_3_SG"));
    CHECK_FALSE(ra_accepted(ra, "DET N_3_SG V_3_PL"));
    CHECK(ra_accepted(ra, "DET ADJ ADJ N_3_PL V_3_PL"));
    CHECK(ra_accepted(ra, "PRON_1_SG V_1_SG"));
    CHECK_FALSE(ra_accepted(ra, "PRON_1_SG V_3_SG"));
    CHECK_FALSE(ra_accepted(ra, ""));
    CHECK(oracle::language(fsa::expand_registers(ra), 3) == oracle::ra_language(ra, 3));
  }

  TEST_CASE("german nominal agreement flips under any single-feature perturbation") {
    const auto ra = agreement_automaton(Language::kGerman);
    const std::string base = "_NOM_M_SG";
    CHECK(ra_accepted(ra, "DET" + base + " ADJ" + base + " N" + base + " V_3_SG"));
    const std::vector<std::vector<std::string>> domains = {kCases, kGenders, kNumbers};
    const std::vector<std::string> value = {"NOM", "M", "SG"};
    int perturbations = 0;
    for (int word_index = 0; word_index < 3; ++word_index)
      for (std::size_t f = 0; f < 3; ++f)
        for (const auto& alt : domains[f]) {
          if (alt == value[f]) continue;
          std::vector<std::string> feats = value;
          feats[f] = alt;
          const std::string bad = "_" + feats[0] + "_" + feats[1] + "_" + feats[2];
          const std::string cats[] = {"DET", "ADJ", "N"};
          std::string s;
          for (int k = 0; k < 3; ++k) s += cats[k] + (k == word_index ? bad : base) + " ";
          CHECK_FALSE(ra_accepted(ra, s + "V_3_SG"));
          ++perturbations;
        }
    CHECK(perturbations == 3 * (3 + 2 + 1));
    CHECK_FALSE(ra_accepted(ra, "DET" + base + " N" + base + " V_3_PL"));
    CHECK_FALSE(ra_accepted(ra, "DET" + base + " N" + base + " V_1_SG"));
  }

  TEST_CASE("agreement is invariant under consistent renaming of values") {
    const auto ra = agreement_automaton(Language::kEnglish);
    // Swap SG and PL everywhere.
    auto swap = [](std::string s) {
      std::string out;
      for (const auto& tok : word(s)) {
        std::string t = tok.text();
        if (auto p = t.find("SG"); p != std::string::npos)
          t.replace(p, 2, "PL");
        else if (auto q = t.find("PL"); q != std::string::npos)
          t.replace(q, 2, "SG");
        out += t + " ";
      }
      return out;
    };
    for (const auto& w : oracle::sigma_star(ra.alphabet(), 3)) {
      const std::string s = fsa::to_string(w);
      CHECK(ra_accepted(ra, s) == ra_accepted(ra, swap(s)));
    }
  }

  TEST_CASE("adjacency pairs") {
    const auto fa = adjacency_pairs();
    CHECK(accepted(fa, "Q A"));
    CHECK(accepted(fa, "Q A C Q A Q A C"));
    CHECK_FALSE(accepted(fa, ""));
    CHECK_FALSE(accepted(fa, "Q A C C"));
    const auto re = fsa::regex_compile(fsa::parse_regex(kAdjacencyRegex));
    CHECK(oracle::language(fa, 9) == oracle::language(re, 9, fa.alphabet()));
  }

  TEST_CASE("chant schema") {
    const auto en = chant_schema(Language::kEnglish);
    const auto de = chant_schema(Language::kGerman);
    CHECK(accepted(en, "OPEN_CHANT DIALOGUE CLOSE_CHANT"));
    CHECK(accepted(en, "OPEN_CHANT DIALOGUE DIALOGUE CLOSE_CHANT"));
    CHECK_FALSE(accepted(en, "OPEN_CHANT DIALOGUE REPAIR_CHANT DIALOGUE CLOSE_CHANT"));
    CHECK(accepted(de, "OPEN_CHANT DIALOGUE REPAIR_CHANT DIALOGUE CLOSE_CHANT"));
    CHECK_FALSE(accepted(en, ""));
    CHECK_FALSE(accepted(de, ""));
    CHECK_FALSE(accepted(de, "OPEN_CHANT REPAIR_CHANT DIALOGUE CLOSE_CHANT"));
  }

  TEST_CASE("word formation") {
    const auto prefixes = prefix_vocabulary();
    CHECK(prefixes.contains("anti"));
    const auto fa = kleene_vocab(prefixes);
    CHECK(accepted(fa, ""));
    CHECK(accepted(fa, "anti trans pre post over"));
    CHECK(segment("antitransprepostover", prefixes) ==
          std::vector<std::string>{"anti", "trans", "pre", "post", "over"});
    CHECK_FALSE(segment("antitransprepostoverkill", prefixes));
    CHECK(segment("", prefixes) == std::vector<std::string>{});
    CHECK(segment("twin cylinder overhead camshaft motorcycle", compound_vocabulary()) ==
          std::vector<std::string>{"twin", "cylinder", "over", "head", "cam", "shaft", "motor",
                                   "cycle"});
    CHECK_THROWS_AS(kleene_vocab({}), Error);
  }

  TEST_CASE("segmentation agrees with the vocabulary automaton") {
    const auto vocab = compound_vocabulary();
    const auto fa = kleene_vocab(vocab);
    for (const auto& w : oracle::sigma_star(fa.alphabet(), 3)) {
      std::string glued;
      for (const auto& s : w) glued += s.text();
      const auto seg = segment(glued, vocab);
      REQUIRE(seg);
      std::string back;
      for (const auto& s : *seg) back += s;
      CHECK(back == glued);
      CHECK(oracle::nfa_accepts(fa, w));
    }
  }

  TEST_CASE("blend counts") {
    CHECK(blend_count(56, 549) == 30744);
    CHECK(blend_count(0, 549) == 0);
    CHECK(blend_count(10, 10) == 100);
    CHECK(fsa::count_language(blend_automaton(10, 10)).to_string() == "FINITE 100");
    const auto big = blend_automaton(56, 549);
    CHECK(oracle::path_count(big) == 30744);
    CHECK(fsa::count_language(big).to_string() == "FINITE 30744");
    CHECK_THROWS_AS(blend_count(1ull << 40, 1ull << 40), Error);
  }

  TEST_CASE("iteration templates") {
    auto compile = [](IterationKind k, IterationParams p) {
      return fsa::regex_compile(iteration_template(k, p));
    };
    IterationParams names;
    names.items = {"Fitzgerald", "Dietrich", "LadyGaga"};
    const auto listing = compile(IterationKind::kListing, names);
    CHECK(accepted(listing, "Fitzgerald , Dietrich and LadyGaga"));
    CHECK(accepted(listing, "Fitzgerald"));
    CHECK_FALSE(accepted(listing, "Fitzgerald , Dietrich"));
    IterationParams asyn = names;
    asyn.syndetic = false;
    CHECK(accepted(compile(IterationKind::kListing, asyn), "Fitzgerald , Dietrich"));

    IterationParams single;
    single.items = {"Jake"};
    CHECK(accepted(compile(IterationKind::kListing, single), "Jake"));

    IterationParams longw;
    longw.items = {"long"};
    const auto redup = compile(IterationKind::kReduplication, longw);
    CHECK(accepted(redup, "long long"));
    CHECK_FALSE(accepted(redup, "long"));

    IterationParams bc;
    bc.items = {"Bonnie", "Clyde"};
    CHECK(accepted(compile(IterationKind::kConjunctionSyndetic, bc), "Bonnie and Clyde"));
    IterationParams veni;
    veni.items = {"veni", "vidi", "vici"};
    CHECK(accepted(compile(IterationKind::kConjunctionAsyndetic, veni), "veni , vidi , vici"));

    IterationParams it;
    it.items = {"it"};
    const auto rep = compile(IterationKind::kRepetition, it);
    CHECK(accepted(rep, "it , it , it"));
    CHECK_FALSE(accepted(rep, "it"));

    IterationParams days;
    days.items = {"Monday", "Tuesday", "Wednesday"};
    const auto succ = compile(IterationKind::kSuccession, days);
    CHECK(accepted(succ, "Monday , Tuesday , Wednesday"));
    CHECK(accepted(succ, "Tuesday , Wednesday"));
    CHECK_FALSE(accepted(succ, "Tuesday , Monday"));
    CHECK_FALSE(accepted(succ, "Monday , Wednesday"));

    CHECK(accepted(compile(IterationKind::kApposition, names), "Fitzgerald , Dietrich"));
    CHECK_FALSE(accepted(compile(IterationKind::kApposition, names), "Fitzgerald"));

    for (auto k : {IterationKind::kConjunctionSyndetic, IterationKind::kConjunctionAsyndetic,
                   IterationKind::kApposition, IterationKind::kReduplication,
                   IterationKind::kRepetition, IterationKind::kListing, IterationKind::kSuccession})
      CHECK(parse_iteration_kind(to_string(k)) == k);
    CHECK_THROWS_AS(iteration_template(IterationKind::kListing, {}), Error);
  }

  TEST_CASE("wh dependencies") {
    const auto ra = wh_dependency();
    CHECK(ra_accepted(ra, "WH w GAP"));
    CHECK_FALSE(ra_accepted(ra, "WH w"));
    CHECK_FALSE(ra_accepted(ra, "GAP"));
    CHECK(ra_accepted(ra, "WH_x WH_y WH_z w w GAP_x GAP_y GAP_z"));
    CHECK_FALSE(ra_accepted(ra, "WH_x WH_x GAP_x GAP_x"));
    CHECK(oracle::language(fsa::expand_registers(ra), 4) == oracle::ra_language(ra, 4));
  }

  TEST_CASE("cross-serial pairing") {
    const auto ok = cross_serial_check({{"Jake", "Jock", "Jack"}, {"June", "Joan", "Jane"}});
    CHECK(ok.ok);
    CHECK(ok.tuples == std::vector<std::vector<std::string>>{
                           {"Jake", "June"}, {"Jock", "Joan"}, {"Jack", "Jane"}});
    const auto amb = cross_serial_check({{"Jake", "Jock", "Jack"}, {"June", "Joan"}});
    CHECK_FALSE(amb.ok);
    CHECK(amb.reason == CrossSerialReason::kAmbiguous);
    const auto over = cross_serial_check({{"a", "b", "c", "d"}, {"e", "f", "g", "h"}}, 3);
    CHECK_FALSE(over.ok);
    CHECK(over.reason == CrossSerialReason::kBoundExceeded);
    CHECK_THROWS_AS(cross_serial_check({{"a"}}), Error);
  }

  TEST_CASE("clause templates") {
    const auto saad = fragments::saad_clause();
    const auto lang = oracle::cfg_language(saad, 8);
    CHECK(lang.contains(word("Jack gave Mary the chair")));
    CHECK(lang.contains(word("the architect designed the chair yesterday")));
    CHECK_FALSE(lang.contains(word("Jack gave Mary the chair Camembert")));
    for (const auto& w : lang) CHECK(w.size() <= 8);
    const auto centre = oracle::cfg_language(centre_embedding(), 7);
    CHECK(centre == oracle::WordSet{word("b"), word("a b a"), word("a a b a a"),
                                    word("a a a b a a a")});
  }

  TEST_CASE("registry") {
    std::set<std::string> names;
    for (const auto& f : registry()) {
      CHECK(names.insert(f.name).second);
      CHECK_FALSE(f.emit().empty());
    }
    CHECK(names.contains("english_aux"));
    CHECK(find_fragment("tem").extension == "fst");
    CHECK_THROWS_AS(find_fragment("nope"), DomainError);
    CHECK(parse_language("DE") == Language::kGerman);
    CHECK_THROWS_AS(parse_language("FR"), Error);
  }
}
