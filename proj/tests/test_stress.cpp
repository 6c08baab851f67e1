#include <doctest.h>

#include <algorithm>
#include <set>

#include "mlg/stress/stress.hpp"
#include "oracles.hpp"

using namespace mlg;
using namespace mlg::stress;

TEST_SUITE("stress") {
  TEST_CASE("nuclear stress example") {
    const auto t = parse_tree("((big John)(saw (small Joan)))");
    const auto c = nsr_encode(t);
    CHECK(c.values == std::vector<int>{3, 2, 3, 4, 1});
    CHECK(format_coding(t.leaves(), c.values) == "big^3 John^2 saw^3 small^4 Joan^1");
  }

  TEST_CASE("compound stress example") {
    const auto t = parse_tree("((desk top)(pen stand))");
    CHECK(csr_encode(t).values == std::vector<int>{1, 3, 2, 3});
    CHECK(csr_encode(t).direction == Direction::kCsr);
  }

  TEST_CASE("tree shape counts") {
    const std::size_t expected[] = {1, 1, 3, 11, 45, 197, 903, 4279};
    for (std::size_t n = 1; n <= 8; ++n) CHECK(oracle::trees(n).size() == expected[n - 1]);
  }

  TEST_CASE("decode inverts encode for every tree up to eight leaves") {
    std::size_t total = 0;
    for (std::size_t n = 1; n <= 8; ++n) {
      std::set<std::vector<int>> nsr_codes, csr_codes;
      for (const auto& t : oracle::trees(n)) {
        const auto words = t.leaves();
        const auto nsr = nsr_encode(t);
        const auto csr = csr_encode(t);
        CHECK_NOTHROW(check_coding(nsr.values));
        CHECK_NOTHROW(check_coding(csr.values));
        CHECK(nsr_decode(nsr.values, words) == t);
        CHECK(csr_decode(csr.values, words) == t);
        CHECK(decode(nsr, words) == t);
        nsr_codes.insert(nsr.values);
        csr_codes.insert(csr.values);
        ++total;
      }
      CHECK(nsr_codes.size() == oracle::trees(n).size());
      CHECK(csr_codes.size() == oracle::trees(n).size());
    }
    CHECK(total == 5440);
  }

  TEST_CASE("compound stress mirrors nuclear stress") {
    for (std::size_t n = 1; n <= 6; ++n)
      for (const auto& t : oracle::trees(n)) {
        auto mirrored = nsr_encode(mirror(t)).values;
        std::reverse(mirrored.begin(), mirrored.end());
        CHECK(csr_encode(t).values == mirrored);
        CHECK(mirror(mirror(t)) == t);
      }
  }

  TEST_CASE("nuclear stress structure") {
    for (std::size_t n = 2; n <= 6; ++n)
      for (const auto& t : oracle::trees(n)) {
        const auto v = nsr_encode(t).values;
        CHECK(v.back() == 1);
        CHECK(*std::max_element(v.begin(), v.end()) == static_cast<int>(t.depth()) + 1);
      }
  }

  TEST_CASE("invalid codings") {
    CHECK_THROWS_AS(check_coding({}), NotDecodableError);
    CHECK_THROWS_AS(check_coding({2, 2}), NotDecodableError);
    CHECK_THROWS_AS(check_coding({1, 1}), NotDecodableError);
    CHECK_THROWS_AS(check_coding({4, 1}), NotDecodableError);
    CHECK_THROWS_AS(check_coding({0, 1}), NotDecodableError);
    CHECK_THROWS_AS(nsr_decode({1, 2}), NotDecodableError);
    CHECK_THROWS_AS(csr_decode({2, 1}), NotDecodableError);
    CHECK(to_string(csr_decode({1, 3, 2, 3})) == "((w1 w2) (w3 w4))");
    try {
      nsr_decode({1, 2, 1});
      FAIL("expected an error");
    } catch (const NotDecodableError& e) {
      CHECK(e.code() == "NOT_DECODABLE");
    }
  }

  TEST_CASE("every value vector over small alphabets decodes or is rejected consistently") {
    // Exhaustive over values 1..4 of length <= 5: decodable vectors are
    // exactly the encodings.
    std::set<std::vector<int>> codes;
    for (std::size_t n = 1; n <= 5; ++n)
      for (const auto& t : oracle::trees(n)) codes.insert(nsr_encode(t).values);
    std::vector<std::vector<int>> all{{}};
    for (std::size_t len = 1; len <= 5; ++len) {
      std::vector<std::vector<int>> next;
      for (const auto& v : all)
        if (v.size() == len - 1)
          for (int x = 1; x <= 4; ++x) {
            auto w = v;
            w.push_back(x);
            next.push_back(w);
          }
      for (const auto& v : next) {
        bool ok = true;
        try {
          nsr_decode(v);
        } catch (const NotDecodableError&) {
          ok = false;
        }
        CHECK(ok == codes.contains(v));
      }
      all.insert(all.end(), next.begin(), next.end());
    }
  }

  TEST_CASE("tree syntax") {
    CHECK(to_string(parse_tree("((big John)(saw (small Joan)))")) ==
          "((big John) (saw (small Joan)))");
    CHECK(parse_tree("John").is_leaf());
    CHECK(parse_tree("((a b))") == parse_tree("(a b)"));
    CHECK_THROWS_AS(parse_tree("(a b"), ParseError);
    CHECK_THROWS_AS(parse_tree("()"), Error);
    CHECK_THROWS_AS(parse_tree("(a b) c"), ParseError);
    CHECK_THROWS_AS(SyntaxTree::leaf("a b"), Error);
    CHECK(parse_tree("(a (b c))").depth() == 2);
    CHECK(relabel(parse_tree("(a (b c))"), {"x", "y", "z"}) == parse_tree("(x (y z))"));
  }

  TEST_CASE("coding syntax") {
    const auto a = parse_coding("big^3 John^2");
    CHECK(a.words == std::vector<std::string>{"big", "John"});
    CHECK(a.values == std::vector<int>{3, 2});
    const auto b = parse_coding("big³ John² saw³ small⁴ Joan¹");
    CHECK(b.values == std::vector<int>{3, 2, 3, 4, 1});
    CHECK(parse_coding("3 2 3 4 1").values == b.values);
    CHECK(parse_coding("3,2,3,4,1").values == b.values);
    CHECK(to_string(nsr_decode(b.values, b.words)) == "((big John) (saw (small Joan)))");
    CHECK_THROWS_AS(parse_coding("big^3 2"), Error);
    CHECK_THROWS_AS(parse_coding("big^x"), Error);
  }

  TEST_CASE("lexical overrides") {
    const OverrideTable table = {{"Oxford Road", {1, 2}}};
    const auto t = parse_tree("(Oxford Road)");
    const auto v = nsr_encode(t).values;
    CHECK(v == std::vector<int>{2, 1});
    CHECK(apply_overrides(t.leaves(), v, table) == std::vector<int>{1, 2});
    CHECK(apply_overrides({"Oxford", "Street"}, v, table) == v);
  }
}
