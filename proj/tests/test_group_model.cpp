#include <doctest.h>

#include "helpers.hpp"
#include "spectra/group.hpp"

using namespace spectra;
using spectra::testing::random_raw_word;
using spectra::testing::random_word;

namespace {

Word W(const GroupPresentation& p, const std::string& s) { return parse_word(p, s); }

const GroupPresentation F2 = GroupPresentation::free_group(2);
const GroupPresentation Z2 = GroupPresentation::free_abelian(2);
const GroupPresentation C23 = GroupPresentation::free_product_cyclic({2, 3});

}  // namespace

TEST_CASE("presentation parse/str round trip") {
  CHECK(GroupPresentation::parse("free:2") == F2);
  CHECK(GroupPresentation::parse("zd:2") == Z2);
  CHECK(GroupPresentation::parse("fpc:2,3") == C23);
  CHECK(F2.str() == "free:2");
  CHECK(Z2.str() == "zd:2");
  CHECK(C23.str() == "fpc:2,3");
  CHECK_THROWS_AS(GroupPresentation::parse("free:0"), ValidationError);
  CHECK_THROWS_AS(GroupPresentation::parse("fpc:1"), ValidationError);
  CHECK_THROWS_AS(GroupPresentation::parse("nope:2"), ValidationError);
}

TEST_CASE("normal form examples") {
  CHECK(F2.normal_form(W(F2, "aAb")) == W(F2, "b"));
  CHECK(word_string(Z2.normal_form(W(Z2, "ba"))) == "ab");
  CHECK(C23.normal_form(W(C23, "aabbb")).is_identity());
}

TEST_CASE("multiply examples") {
  CHECK(word_string(F2.multiply(W(F2, "ab"), W(F2, "B"))) == "a");
  CHECK(F2.multiply(W(F2, "a"), W(F2, "A")).is_identity());
  CHECK(word_string(C23.multiply(W(C23, "ab"), W(C23, "bb"))) == "a");
}

TEST_CASE("invert examples") {
  CHECK(word_string(F2.invert(W(F2, "ab"))) == "BA");
  CHECK(F2.invert(Word{}).is_identity());
  // b^-1 = b^2 when b^3 = e; the symmetric-residue convention spells it "B"
  CHECK(word_string(C23.invert(W(C23, "b"))) == "B");
  CHECK(C23.normal_form(C23.multiply(W(C23, "b"), W(C23, "b"))) == W(C23, "B"));
}

TEST_CASE("word text round trip and validation") {
  CHECK(word_string(W(F2, "aBa")) == "aBa");
  CHECK(word_string(Word{}) == "e");
  CHECK(W(F2, "e").is_identity());
  CHECK_THROWS_AS(parse_word(F2, "c"), ValidationError);   // rank 2: only a, b
  CHECK_THROWS_AS(parse_word(F2, "a b"), ValidationError); // no spaces in words
}

TEST_CASE("symmetrize examples") {
  GenSet s = symmetrize(F2, {W(F2, "a"), W(F2, "b")});
  CHECK(genset_string(s) == "a,A,b,B");
  GenSet t = symmetrize(F2, {W(F2, "a"), W(F2, "A")});
  CHECK(genset_string(t) == "a,A");
  GenSet u = symmetrize(C23, {W(C23, "a"), W(C23, "b")});
  CHECK(genset_string(u) == "a,b,B");  // a is self-inverse; B = b^2
  CHECK(u.is_symmetric());
  // "bb" is accepted as input and normalizes to the same set
  CHECK(genset_string(parse_genset(C23, "a,b,bb")) == "a,b,B");
}

TEST_CASE("genset parsing") {
  GenSet s = parse_genset(F2, "a,A,b,B");
  CHECK(s.size() == 4);
  CHECK(s.is_symmetric());
  CHECK(s.missing_inverse() == nullptr);
  GenSet bad = parse_genset(F2, "a,b");
  REQUIRE(bad.missing_inverse() != nullptr);
  CHECK(word_string(F2.invert(*bad.missing_inverse())) == "A");
  CHECK_THROWS_AS(make_genset(F2, {W(F2, "aA")}), ValidationError);  // not normal form
}

TEST_CASE("normal form properties, all families") {
  for (const GroupPresentation& p :
       {F2, Z2, C23, GroupPresentation::free_group(3),
        GroupPresentation::free_product_cyclic({0, 4}),
        GroupPresentation::free_abelian(3)}) {
    CAPTURE(p.str());
    SplitMix64 rng(0xC0FFEE ^ WordHash{}(parse_word(p, "e")));
    for (int i = 0; i < 2000; ++i) {
      Word raw = random_raw_word(rng, p.rank(), 12);
      Word nf = p.normal_form(raw);
      REQUIRE(p.normal_form(nf) == nf);                 // idempotent
      REQUIRE(nf.length() <= raw.length());             // length-nonincreasing
      Word w = random_word(rng, p, 8);
      REQUIRE(p.multiply(w, p.invert(w)).is_identity());
      REQUIRE(p.invert(p.invert(w)) == w);              // involution
    }
  }
}

TEST_CASE("multiplication associativity, 10^4 triples per family") {
  for (const GroupPresentation& p : {F2, Z2, C23}) {
    CAPTURE(p.str());
    SplitMix64 rng(777);
    for (int i = 0; i < 10000; ++i) {
      Word a = random_word(rng, p, 6), b = random_word(rng, p, 6),
           c = random_word(rng, p, 6);
      REQUIRE(p.multiply(p.multiply(a, b), c) == p.multiply(a, p.multiply(b, c)));
    }
  }
}

TEST_CASE("symmetrize output closed under inversion") {
  for (const GroupPresentation& p : {F2, Z2, C23}) {
    SplitMix64 rng(31337);
    for (int i = 0; i < 200; ++i) {
      std::vector<Word> ws;
      for (int j = 0; j < 5; ++j) ws.push_back(random_word(rng, p, 5));
      GenSet s = symmetrize(p, ws);
      REQUIRE(s.is_symmetric());
      for (std::size_t j = 0; j + 1 < s.words.size(); ++j)
        REQUIRE(s.words[j] < s.words[j + 1]);  // sorted, no duplicates
    }
  }
}

TEST_CASE("cyclic factor exponents use the symmetric residue") {
  GroupPresentation c5 = GroupPresentation::free_product_cyclic({5});
  // a^3 = a^{-2}: canonical form has length 2
  CHECK(word_string(c5.normal_form(W(c5, "aaa"))) == "AA");
  GroupPresentation c4 = GroupPresentation::free_product_cyclic({4});
  // tie at m/2 resolves to the positive exponent
  CHECK(word_string(c4.normal_form(W(c4, "AA"))) == "aa");
}
