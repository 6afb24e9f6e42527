#include <doctest.h>

#include <random>
#include <thread>

#include "oracles.hpp"
#include "tetrus/amalgam.hpp"
#include "tetrus/subgroup_graph.hpp"
#include "tetrus/tangle.hpp"

using namespace tetrus;

namespace {

DoubledWord D(const char* s) { return DoubledWord::parse(s); }
FreeWord W(const char* s) { return parse_word(s); }

const AmalgamContext& ctx() {
  static const AmalgamContext c = AmalgamContext::boundary_subgroup();
  return c;
}

DoubledWord random_doubled(std::mt19937_64& rng) {
  std::vector<Syllable> raw;
  for (int n = 1 + static_cast<int>(rng() % 4); n > 0; --n) {
    std::string s;
    for (int k = 1 + static_cast<int>(rng() % 4); k > 0; --k) s.push_back("xXhH"[rng() % 4]);
    raw.push_back({rng() % 2 ? Side::mirror : Side::plain, oracle::to_library(oracle::reduce(s))});
  }
  return DoubledWord(raw);
}

}  // namespace

TEST_CASE("doubled word construction and literals") {
  CHECK(D("x ~x^-1").syllables().size() == 2);
  CHECK(D("x x ~h").syllables() == std::vector<Syllable>{{Side::plain, W("x^2")}, {Side::mirror, W("h")}});
  CHECK(D("x ~h ~h^-1 x^-1").empty());
  CHECK(D("").empty());
  const DoubledWord w = D("(x h)^2 ~(h x)");
  CHECK((w * w.inverse()).empty());
  CHECK(DoubledWord::parse(w.str()) == w);
}

TEST_CASE("mirror is an involution fixing Lambda") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const DoubledWord w = random_doubled(rng);
    CHECK(mirror(mirror(w)) == w);
  }
  CHECK(amalgam_equal(ctx(), mirror(D("h")), D("h")));
  for (const auto& g : tangle::lambda_generators()) {
    CHECK(amalgam_equal(ctx(), DoubledWord::single(Side::mirror, g), DoubledWord::single(Side::plain, g)));
  }
  CHECK(mirror(D("x")) == D("~x"));
  CHECK_FALSE(amalgam_equal(ctx(), D("x"), D("~x")));
}

TEST_CASE("normal form examples") {
  const NormalForm trivial = normal_form(ctx(), D("h ~h^-1"));
  CHECK(trivial.lambda_part.is_identity());
  CHECK(trivial.syllables.empty());

  const NormalForm xx = normal_form(ctx(), D("x ~x"));
  CHECK(xx.syllables.size() == 2);
  for (const auto& s : xx.syllables) CHECK_FALSE(s.word.is_identity());
  // The same element written with a Lambda element moved across the junction.
  const NormalForm moved = normal_form(ctx(), D("x h ~h^-1 ~x"));
  CHECK(moved == xx);

  const NormalForm m = normal_form(ctx(), DoubledWord::single(Side::plain, tangle::meridian_m()));
  CHECK(m.lambda_part == tangle::meridian_m());
  CHECK(m.syllables.empty());
  CHECK(amalgam_equal(ctx(), m.reassemble(), DoubledWord::single(Side::plain, tangle::meridian_m())));
}

TEST_CASE("syllable length") {
  CHECK(syllable_length(ctx(), DoubledWord()) == 0);
  CHECK(syllable_length(ctx(), D("x")) == 1);
  CHECK(syllable_length(ctx(), D("x ~x x")) == 3);
  // The middle representative is nontrivial because x is not in Lambda.
  const SubgroupGraph lambda = graph_from_generators(tangle::lambda_generators());
  CHECK_FALSE(membership(lambda, W("x")));
  CHECK(syllable_length(ctx(), D("h ~h")) == 0);

  std::mt19937_64 rng(32);
  for (int i = 0; i < 300; ++i) {
    const DoubledWord a = random_doubled(rng), b = random_doubled(rng);
    CHECK(syllable_length(ctx(), a * b) <= syllable_length(ctx(), a) + syllable_length(ctx(), b));
  }
}

TEST_CASE("normal form is canonical on constructed equal pairs") {
  std::mt19937_64 rng(33);
  const auto gens = tangle::lambda_generators();
  for (int i = 0; i < 500; ++i) {
    const DoubledWord w = random_doubled(rng);
    std::vector<Syllable> raw = w.syllables();
    const FreeWord lam = gens[rng() % gens.size()].pow(rng() % 2 ? 1 : -1);
    const std::size_t cut = rng() % (raw.size() + 1);
    raw.insert(raw.begin() + static_cast<std::ptrdiff_t>(cut), {{Side::mirror, lam}, {Side::plain, lam.inverse()}});
    const DoubledWord v(raw);
    CHECK(normal_form(ctx(), v) == normal_form(ctx(), w));
    CHECK(normal_form(ctx(), w).reassemble() == normal_form(ctx(), normal_form(ctx(), w).reassemble()).reassemble());
  }
}

TEST_CASE("kernel decomposition examples") {
  const EquivariantHom pi41{CyclicHom::make(4, 1, 1)};
  const auto parts = kernel_decompose(ctx(), pi41, D("x ~x^-1"));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == D("x h^-1"));
  CHECK(parts[1] == D("~h ~x^-1"));

  const DoubledWord single = D("x^4");
  CHECK(kernel_decompose(ctx(), pi41, single) == std::vector<DoubledWord>{single});

  const EquivariantHom pi2{CyclicHom::make(2, 1, 1)};
  const DoubledWord w = D("h ~h");
  const auto p2 = kernel_decompose(ctx(), pi2, w);
  DoubledWord product;
  for (const auto& p : p2) {
    CHECK(p.syllables().size() == 1);
    CHECK(hom_image(pi2, p) == 0);
    product = product * p;
  }
  CHECK(amalgam_equal(ctx(), product, w));

  CHECK_THROWS(kernel_decompose(ctx(), pi41, D("x")));
  // Lambda maps onto the image of F, so a non-surjective map fails the hypothesis.
  CHECK_THROWS(kernel_decompose(ctx(), EquivariantHom{CyclicHom::make(4, 2, 2)}, D("x^2 ~x^-2")));
}

TEST_CASE("kernel decomposition soundness on random elements") {
  std::mt19937_64 rng(34);
  for (long long n : {2LL, 4LL}) {
    const EquivariantHom f{CyclicHom::make(n, 1, 1)};
    for (int i = 0; i < 200; ++i) {
      DoubledWord w = random_doubled(rng);
      const long long img = hom_image(f, w);
      if (img) w = w * DoubledWord::single(rng() % 2 ? Side::mirror : Side::plain, W("x").pow(-img));
      const auto parts = kernel_decompose(ctx(), f, w);
      DoubledWord product;
      for (const auto& p : parts) {
        CHECK(p.syllables().size() <= 1);
        CHECK(hom_image(f, p) == 0);
        product = product * p;
      }
      CHECK(amalgam_equal(ctx(), product, w));
    }
  }
}

TEST_CASE("the boundary subgroup maps onto Z/n") {
  // ker(f) meets Lambda in a subgroup of index n in Lambda: Lambda acts
  // transitively on the n cosets of ker(f).
  for (long long n : {2LL, 4LL}) {
    const SubgroupGraph k = kernel_graph(CyclicHom::make(n, 1, 1));
    CHECK(orbit_decomposition(k, tangle::lambda_generators()) == std::vector<std::size_t>{static_cast<std::size_t>(n)});
  }
}

TEST_CASE("the coset memo does not change answers under concurrent use") {
  const AmalgamContext fresh = AmalgamContext::boundary_subgroup();
  std::mt19937_64 rng(35);
  std::vector<DoubledWord> inputs;
  for (int i = 0; i < 200; ++i) inputs.push_back(random_doubled(rng));
  std::vector<NormalForm> expected;
  for (const auto& w : inputs) expected.push_back(normal_form(AmalgamContext::boundary_subgroup(), w));
  std::vector<std::thread> threads;
  std::vector<int> mismatches(4, 0);
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (!(normal_form(fresh, inputs[(i * 7 + static_cast<std::size_t>(t)) % inputs.size()]) ==
              expected[(i * 7 + static_cast<std::size_t>(t)) % inputs.size()])) {
          ++mismatches[static_cast<std::size_t>(t)];
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  for (int m : mismatches) CHECK(m == 0);
  CHECK(fresh.memo_size() > 0);
}
