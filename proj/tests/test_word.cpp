#include <random>

#include <doctest.h>

#include "common.hpp"
#include "cubes/word.hpp"

using namespace cubes;
namespace oracle = testing::oracle;

namespace {
  std::string random_string(std::mt19937_64& rng, std::size_t max_len) {
    static std::string const letters = "xXyYzZwW";
    std::size_t              n       = rng() % (max_len + 1);
    std::string              s;
    for (std::size_t i = 0; i < n; ++i) {
      s.push_back(letters[rng() % letters.size()]);
    }
    return s;
  }

  Word W(std::string const& s) {
    return Word::parse(s);
  }
}  // namespace

TEST_SUITE("word") {
  TEST_CASE("parse and print") {
    Alphabet a;
    CHECK(W("xXyY").empty());
    CHECK(W("xyX").str() == "xyX");
    CHECK(W(" x y\nz ").str() == "xyz");
    CHECK_THROWS_AS(Word::parse("xq"), ParseError);
    CHECK_THROWS_AS(Word::parse("x1"), ParseError);
    CHECK_THROWS_AS(Alphabet(0), InvalidArgument);
    CHECK_THROWS_AS(Alphabet("xx"), InvalidArgument);
    CHECK(Alphabet(2).names() == "xy");
    CHECK_THROWS_AS(Word::parse("z", Alphabet(2)), ParseError);
    CHECK(a.letter(Gen(3, true)) == 'W');
  }

  TEST_CASE("parse error position") {
    try {
      Word::parse("xy\nz!");
      FAIL("no throw");
    } catch (ParseError const& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 2);
    }
  }

  TEST_CASE("free reduction agrees with the oracle") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 2000; ++i) {
      std::string s = random_string(rng, 20);
      CHECK(W(s).str() == oracle::reduce(s));
    }
  }

  TEST_CASE("commutator of commutators") {
    CHECK(commutator_of_commutators().str() == testing::ref::C);
    CHECK(oracle::comm(oracle::comm("x", "y"), oracle::comm("z", "w")) == testing::ref::C);
    CHECK(conjugate(commutator_of_commutators(), W("WZw")).str() == testing::ref::C_WZw);
    CHECK(commutator(W("x"), W("y")).str() == "XYxy");
  }

  TEST_CASE("group identities") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 500; ++i) {
      Word u = W(random_string(rng, 8)), v = W(random_string(rng, 8)), t = W(random_string(rng, 8));
      CHECK((u * invert(u)).empty());
      CHECK(invert(invert(u)) == u);
      CHECK(invert(u * v) == invert(v) * invert(u));
      CHECK((u * v) * t == u * (v * t));
      CHECK(conjugate(u * v, t) == conjugate(u, t) * conjugate(v, t));
      CHECK(conjugate(conjugate(u, v), t) == conjugate(u, v * t));
      CHECK(power(u, -3) == power(invert(u), 3));
      CHECK(power(conjugate(u, v), 3) == conjugate(power(u, 3), v));
      CHECK(invert(commutator(u, v)) == commutator(v, u));
      CHECK(conjugate(u, v).str() == oracle::conj(u.str(), v.str()));
    }
    CHECK(power(W("xy"), 0).empty());
  }

  TEST_CASE("cyclic reduction and rotation") {
    auto cr = cyclic_reduce(W("yxzY"));
    CHECK(cr.core.str() == "xz");
    CHECK(conjugate(cr.core, cr.conjugator) == W("yxzY"));
    CHECK(is_cyclically_reduced(W("xy")));
    CHECK_FALSE(is_cyclically_reduced(W("xyX")));
    CHECK(rotate(W("xyz"), 1).str() == "yzx");
    CHECK(rotate(W("xyz"), 3).str() == "xyz");
    CHECK(rotate(Word(), 5).empty());

    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
      Word w  = W(random_string(rng, 12));
      auto cr = cyclic_reduce(w);
      CHECK(is_cyclically_reduced(cr.core));
      CHECK(conjugate(cr.core, cr.conjugator) == w);
    }
  }

  TEST_CASE("canonical representatives") {
    CHECK(canonical_rep(W("yx")).str() == "xy");
    CHECK(canonical_rep(W("XY")).str() == "xy");
    CHECK(canonical_rep(W("Yw")).str() == "yW");
    CHECK(canonical_rep(Word()).empty());
    CHECK_THROWS_AS(canonical_rep(W("xyX")), InvalidArgument);

    std::mt19937_64 rng(4);
    for (int i = 0; i < 500; ++i) {
      Word w = cyclic_reduce(W(random_string(rng, 10))).core;
      if (w.empty()) {
        continue;
      }
      CHECK(canonical_rep(w).str() == oracle::orbit_min(w.str(), "xyzw"));
      CHECK(canonical_rep(invert(w)) == canonical_rep(w));
      CHECK(canonical_rep(rotate(w, i)) == canonical_rep(w));
    }
  }

  TEST_CASE("base-word counts match brute force") {
    for (std::size_t rank : {1u, 2u, 3u, 4u}) {
      Alphabet    a(rank);
      std::size_t max_len = rank == 4 ? 5 : 6;
      for (std::size_t n = 1; n <= max_len; ++n) {
        auto expected = oracle::base_word_classes(a.names(), n);
        auto got      = base_words(a, n, n);
        CHECK_MESSAGE(got.size() == expected.size(), "rank ", rank, " length ", n);
        std::set<std::string> got_set;
        for (Word const& w : got) {
          got_set.insert(w.str(a));
        }
        CHECK(got_set == expected);
      }
    }
    CHECK(base_words(Alphabet(4), 1, 1).size() == 4);
    CHECK_THROWS_AS(base_words(Alphabet(4), 0, 2), InvalidArgument);
    CHECK_THROWS_AS(base_words(Alphabet(4), 3, 2), InvalidArgument);
  }

  TEST_CASE("base-words are sorted and canonical") {
    auto words = base_words(Alphabet(4), 1, 4);
    CHECK(std::is_sorted(words.begin(), words.end()));
    for (Word const& w : words) {
      CHECK(canonical_rep(w) == w);
    }
  }

  TEST_CASE("support") {
    CHECK(support(W("xYxz")) == 0b0111);
    CHECK(support(Word()) == 0);
  }
}
