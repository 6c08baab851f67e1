#include <doctest.h>

#include <random>

#include "mlg/fsa/algorithms.hpp"
#include "mlg/tone/tone.hpp"

using namespace mlg;
using namespace mlg::tone;

namespace {

std::vector<ToneString> all_tone_strings(std::size_t max_len) {
  std::vector<ToneString> out, layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<ToneString> next;
    for (const auto& t : layer)
      for (Tone x : {Tone::kH, Tone::kL}) {
        auto y = t;
        y.push_back(x);
        next.push_back(y);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// Hand statement of the sandhi: edges faithful, otherwise the preceding
// lexical tone decides.
AllotoneString reference(const ToneString& t) {
  AllotoneString out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Tone basis = (i == 0 || i + 1 == t.size()) ? t[i] : t[i - 1];
    out.push_back(basis == Tone::kH ? Allotone::kHigh : Allotone::kLow);
  }
  return out;
}

}  // namespace

TEST_SUITE("tone") {
  TEST_CASE("table 3") {
    const auto out = tem_apply(parse_tones("L H L L H L L H L L H"));
    CHECK(to_string(out) == "l l h l l h l l h l h");
    CHECK(tem_rules_apply(parse_tones("L H L L H L L H L L H")) == out);
  }

  TEST_CASE("transducer and rules agree on all 2046 strings up to length 10") {
    const auto all = all_tone_strings(10);
    CHECK(all.size() == 2046);
    for (const auto& t : all) {
      const auto fst = tem_apply(t);
      CHECK(fst == tem_rules_apply(t));
      CHECK(fst == reference(t));
      CHECK(fst.size() == t.size());
    }
  }

  TEST_CASE("transducer shape") {
    const auto t = tem_transducer();
    CHECK(t.num_states() == 3);
    CHECK(t.state_name(t.initial()) == "INIT");
    CHECK(t.arcs().size() == 6);
    CHECK_FALSE(t.is_final(t.initial()));
  }

  TEST_CASE("faithful positions") {
    const auto t = parse_tones("H L L H");
    CHECK(to_string(tem_apply(t)) == "h h l h");
    const std::size_t keep[] = {1, 3};
    CHECK(to_string(tem_apply(t, keep)) == "h l l h");
    const std::size_t bad[] = {7};
    CHECK_THROWS_AS(tem_apply(t, bad), Error);
  }

  TEST_CASE("tone errors") {
    try {
      tem_apply({});
      FAIL("expected an error");
    } catch (const DomainError& e) {
      CHECK(e.code() == "EMPTY_INPUT");
    }
    try {
      tem_apply(parse_tones("H !H"));
      FAIL("expected an error");
    } catch (const DomainError& e) {
      CHECK(e.code() == "DOWNSTEP");
    }
    CHECK_THROWS_AS(parse_tones("H M"), Error);
    CHECK_THROWS_AS(parse_allotones("h x"), Error);
  }

  TEST_CASE("tone syntax") {
    CHECK(parse_tones("H ↓H L") == parse_tones("H !H L"));
    CHECK(to_string(parse_tones("H ↓H L")) == "H !H L");
    CHECK(to_string(parse_allotones("h l")) == "h l");
  }

  TEST_CASE("floating tones") {
    const auto e = expand_floating(parse_tones("H !H !H"));
    CHECK(to_string(e) == "H (L) H (L) H");
    CHECK(e.silent == std::vector<bool>{false, true, false, true, false});
    const auto allotones = tem_apply(e.tones);
    CHECK(to_string(allotones) == "h h l h h");
    const auto targets = synthesize_targets(allotones);
    CHECK(targets == std::vector<double>{200, 200, 150, 180, 180});
    CHECK_THROWS_AS(expand_floating(parse_tones("!H H")), Error);
    CHECK(to_string(expand_floating(parse_tones("H L"))) == "H L");
  }

  TEST_CASE("terraced targets") {
    const auto t = synthesize_targets(parse_allotones("l l h l"));
    REQUIRE(t.size() == 4);
    CHECK(t[0] == doctest::Approx(150));
    CHECK(t[1] == doctest::Approx(150));
    CHECK(t[2] == doctest::Approx(180));
    CHECK(t[3] == doctest::Approx(135));
    CHECK(targets_csv({150, 180}) == "index,f0_hz\n0,150.000000\n1,180.000000\n");
    CHECK_THROWS_AS(synthesize_targets(parse_allotones("h"), {100, 150, 0.9}), Error);
    CHECK_THROWS_AS(synthesize_targets(parse_allotones("h"), {200, 150, 1.5}), Error);
  }

  TEST_CASE("high targets never rise") {
    std::mt19937 rng(2);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < 500; ++i) {
      AllotoneString a;
      for (int k = 0; k < 12; ++k) a.push_back(coin(rng) ? Allotone::kHigh : Allotone::kLow);
      const auto t = synthesize_targets(a);
      double last_h = 1e9, last_l = 1e9;
      for (std::size_t k = 0; k < a.size(); ++k) {
        double& last = a[k] == Allotone::kHigh ? last_h : last_l;
        CHECK(t[k] <= last + 1e-9);
        last = t[k];
        if (k > 0 && a[k] == a[k - 1]) CHECK(t[k] == t[k - 1]);
      }
    }
  }
}
