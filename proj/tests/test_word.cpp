#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tetrus/word.hpp"

using namespace tetrus;

namespace {

std::vector<SignedLetter> raw_of(const std::string& s) {
  std::vector<SignedLetter> out;
  for (char c : s) out.push_back({static_cast<char>(std::tolower(c)), std::islower(c) ? 1 : -1});
  return out;
}

std::string random_raw(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), pick(0, 3);
  std::string s;
  for (int n = len(rng); n > 0; --n) s.push_back("xXhH"[pick(rng)]);
  return s;
}

}  // namespace

TEST_CASE("reduce cancels adjacent inverse pairs") {
  CHECK(reduce(raw_of("xX")).is_identity());
  CHECK(reduce(raw_of("hxXh")) == parse_word("h^2"));
  CHECK(reduce(raw_of("")).is_identity());
  CHECK(reduce(raw_of("hxhXXxxH")).str() == "h x");
}

TEST_CASE("reduce agrees with the stack oracle, is idempotent and never lengthens") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const std::string s = random_raw(rng, 20);
    const FreeWord w = reduce(raw_of(s));
    CHECK(oracle::from_library(w) == oracle::reduce(s));
    CHECK(w.length() <= s.size());
    CHECK(reduce(raw_of(oracle::from_library(w))) == w);
  }
}

TEST_CASE("word arithmetic") {
  const FreeWord m = parse_word("h x h x^-2");
  CHECK(oracle::from_library(m) == "hxhXX");
  CHECK((m * m.inverse()).is_identity());
  CHECK(m.pow(3) == m * m * m);
  CHECK(m.pow(-2) == m.inverse() * m.inverse());
  CHECK(m.exponent_sum(0) == -1);
  CHECK(m.exponent_sum(1) == 2);
  CHECK(parse_word("(x h x) h^-1 (x h x)^-1").str() == "x h x h^-1 x^-1 h^-1 x^-1");
}

TEST_CASE("parse_word reports the column of the bad token") {
  try {
    (void)parse_word("x h q");
    FAIL("expected a syntax error");
  } catch (const WordSyntaxError& e) {
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS((void)parse_word("(x h"), WordSyntaxError);
  CHECK_THROWS_AS((void)parse_word("x^"), WordSyntaxError);
}

TEST_CASE("CyclicHom normalizes residues and knows surjectivity") {
  const CyclicHom f = CyclicHom::make(4, 5, -1);
  CHECK(f.image_x == 1);
  CHECK(f.image_h == 3);
  CHECK(f.surjective());
  CHECK_FALSE(CyclicHom::make(4, 2, 2).surjective());
  CHECK(CyclicHom::make(1, 0, 0).surjective());
  CHECK_THROWS_AS(CyclicHom::make(0, 1, 1), InvalidArgument);
}

TEST_CASE("hom_image is additive and invariant under reduction") {
  std::mt19937_64 rng(12);
  for (long long n : {2LL, 3LL, 4LL, 6LL, 7LL}) {
    const CyclicHom f = CyclicHom::make(n, 1 + static_cast<long long>(rng() % 5), static_cast<long long>(rng() % 5));
    for (int i = 0; i < 300; ++i) {
      const std::string su = random_raw(rng, 12), sv = random_raw(rng, 12);
      const FreeWord u = reduce(raw_of(su)), v = reduce(raw_of(sv));
      CHECK(hom_image(f, u * v) == oracle::mod(hom_image(f, u) + hom_image(f, v), n));
      // Direct exponent-sum oracle on the raw letters.
      const long long expected =
          oracle::mod(f.image_x * oracle::exponent_sum(su, 'x') + f.image_h * oracle::exponent_sum(su, 'h'), n);
      CHECK(hom_image(f, u) == expected);
      std::vector<Letter> raw;
      for (char c : su) raw.push_back(c == 'x' ? kX : c == 'X' ? kXInv : c == 'h' ? kH : kHInv);
      CHECK(hom_image(f, std::span<const Letter>(raw)) == expected);
    }
  }
}

namespace {

// Relator evaluation by exponent sums, independent of relators_killed.
bool killed_by_exponent_sums(long long n, long long ix, long long ih, int order) {
  const long long r1 = order * ih;
  const long long r2 = order * (ih + ix + ih - 2 * ix);
  return oracle::mod(r1, n) == 0 && oracle::mod(r2, n) == 0;
}

}  // namespace

TEST_CASE("relators_killed on the orbifold groups") {
  const GroupPresentation e4 = orbifold_presentation(4);
  CHECK(e4.generators().size() == 2);
  CHECK(e4.relators().size() == 2);
  CHECK(relators_killed({4, {1, 1}}, e4));

  const GroupPresentation e3 = orbifold_presentation(3);
  const CyclicAssignment f3{3, {1, 0}};
  CHECK(relators_killed(f3, e3));
  CHECK(f3.surjective());
  CHECK(relators_killed({2, {1, 1}}, orbifold_presentation(2)));

  CHECK(relators_killed({5, {1, 2}}, GroupPresentation({"a", "b"}, {})));

  for (int n = 2; n <= 6; ++n) {
    const GroupPresentation p = orbifold_presentation(n);
    for (long long m = 1; m <= 8; ++m) {
      for (long long ix = 0; ix < m; ++ix) {
        for (long long ih = 0; ih < m; ++ih) {
          CHECK(relators_killed({m, {ix, ih}}, p) == killed_by_exponent_sums(m, ix, ih, n));
        }
      }
    }
  }
}

TEST_CASE("presentation relators must be nonempty") {
  CHECK_THROWS((void)GroupPresentation({"a"}, {"a a^-1"}));
  CHECK_THROWS((void)GroupPresentation({"a"}, {"b"}));
}

TEST_CASE("mod_floor") {
  CHECK(mod_floor(-1, 6) == 5);
  CHECK(mod_floor(13, 6) == 1);
  CHECK(mod_floor(0, 1) == 0);
}
