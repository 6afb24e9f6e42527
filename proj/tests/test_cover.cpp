#include <doctest.h>

#include "oracles.hpp"
#include "tetrus/abelian.hpp"
#include "tetrus/cover_tower.hpp"
#include "tetrus/euler.hpp"
#include "tetrus/tangle.hpp"

using namespace tetrus;
using namespace tetrus::cover;

namespace {

BranchPointDatum single(long long d) { return {{d}}; }

}  // namespace

TEST_CASE("Riemann-Hurwitz") {
  CHECK(riemann_hurwitz(2, 4, {single(4), single(4), single(4), single(4)}) == -4);
  CHECK(riemann_hurwitz(-4, 6, {}) == -24);
  CHECK(riemann_hurwitz(-2, 2, simple_double_branching(32)) == -36);
  for (long long chi : {2LL, 0LL, -1LL, -7LL}) {
    for (long long d = 1; d <= 6; ++d) CHECK(riemann_hurwitz(chi, d, {}) == d * chi);
  }
  CHECK_THROWS_AS(riemann_hurwitz(2, 4, {{{3}}}), InvalidArgument);
  CHECK_THROWS_AS(riemann_hurwitz(2, 0, {}), InvalidArgument);
  CHECK(simple_double_branching(3).size() == 3);
  CHECK(simple_double_branching(1)[0].local_degrees == std::vector<long long>{2});
}

TEST_CASE("genus from Euler characteristic") {
  CHECK(genus_from_chi(-24, 0) == 13);
  CHECK(genus_from_chi(2, 0) == 0);
  CHECK(genus_from_chi(-1, 1) == 1);
  CHECK(genus_from_chi(-36, 0) == 19);
  CHECK_THROWS_AS(genus_from_chi(-5, 0), InvariantViolation);
  CHECK_THROWS_AS(genus_from_chi(4, 0), InvariantViolation);
  CHECK_THROWS_AS(genus_from_chi(0, -1), InvalidArgument);
}

TEST_CASE("Heegaard genera") {
  CHECK(heegaard_genera(19, 13, 6, 5) == HeegaardGenera{25, 39});
  CHECK(heegaard_genera(19, 13, 1, 5).lift == 5);
  CHECK(heegaard_genera(1, 1, 3, 2).fibration == 3);
  CHECK_THROWS(heegaard_genera(0, 13, 6, 5));
}

TEST_CASE("meridian data validation") {
  const MeridianSpec spec = MeridianSpec::tangle();
  CHECK_NOTHROW(spec.validate());
  CHECK(spec.meridians.size() == 2);
  CHECK(spec.boundary_loops.size() == 4);
  MeridianSpec bad = spec;
  bad.meridians.push_back(parse_word("x"));
  CHECK_THROWS_AS(bad.validate(), InvariantViolation);
}

TEST_CASE("branched cover analysis agrees with the oracle action") {
  const MeridianSpec spec = MeridianSpec::tangle();
  const FibrationHom f = derive_fibration_hom();
  const SubgroupGraph g41 = kernel_graph(CyclicHom::make(4, 1, 1));
  const SubgroupGraph prime = coset_extension(f.gamma2, f.hom);
  const SubgroupGraph tilde = intersect(g41, prime);

  struct Level {
    const SubgroupGraph* graph;
    oracle::TowerAction action;
  };
  const std::vector<Level> levels{{&f.gamma2, {{1, 0, 5}, false, false}},
                                  {&g41, {{1, 0, 5}, false, true}},
                                  {&prime, {{1, 0, 5}, true, false}},
                                  {&tilde, {{1, 0, 5}, true, true}}};
  for (const auto& level : levels) {
    const CoverAnalysis a = analyze_branched_cover(*level.graph, spec);
    const auto states = level.action.states();
    CHECK(a.index == states.size());
    // Meridian local degrees are cycle lengths of the meridian on cosets.
    const std::vector<oracle::Word> meridians{oracle::kMeridianH, oracle::kMeridianM};
    for (std::size_t i = 0; i < 2; ++i) {
      const auto cycles = oracle::cycle_lengths(states, level.action, meridians[i], states);
      auto got = a.meridians[i].datum.local_degrees;
      std::sort(got.begin(), got.end());
      CHECK(got == std::vector<long long>(cycles.begin(), cycles.end()));
    }
    const auto orbs = oracle::orbits(level.action, oracle::lambda_generators());
    REQUIRE(a.boundary_components() == orbs.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < orbs.size(); ++i) {
      total += a.boundary[i].degree;
      CHECK(a.boundary[i].euler_characteristic == oracle::capped_boundary_euler(level.action, orbs[i]));
    }
    CHECK(total == a.index);
  }

  const CoverAnalysis a41 = analyze_branched_cover(g41, spec);
  CHECK(a41.meridians[0].datum.local_degrees == std::vector<long long>{4});
  CHECK(a41.meridians[1].datum.local_degrees == std::vector<long long>{4});
  CHECK(a41.boundary_components() == 1);
  CHECK(a41.boundary[0].genus == 3);
  const CoverAnalysis at = analyze_branched_cover(tilde, spec);
  CHECK(at.boundary_components() == 1);
  CHECK(at.boundary[0].euler_characteristic == -24);
  CHECK(at.boundary[0].genus == 13);

  const CoverAnalysis whole = analyze_branched_cover(graph_from_generators({parse_word("x"), parse_word("h")}), spec);
  for (const auto& m : whole.meridians) CHECK(m.datum.local_degrees == std::vector<long long>{1});

  CHECK_THROWS_AS(analyze_branched_cover(graph_from_generators(tangle::lambda_generators()), spec), InfiniteIndex);
}

TEST_CASE("diamond completion") {
  const MeridianSpec spec = MeridianSpec::tangle();
  const FibrationHom f = derive_fibration_hom();
  const SubgroupGraph g41 = kernel_graph(CyclicHom::make(4, 1, 1));
  const SubgroupGraph prime = coset_extension(f.gamma2, f.hom);
  const Diamond d = complete_diamond(g41, prime, spec);
  CHECK(d.index == 24);
  CHECK(d.index_over_g1 == 6);
  CHECK(d.index_over_g2 == 2);
  // Multiplicativity along both edges of the diamond.
  CHECK(d.index == *index(g41) * d.index_over_g1);
  CHECK(d.index == *index(prime) * d.index_over_g2);
  CHECK(d.fills_compatibly());

  const Diamond same = complete_diamond(g41, g41, spec);
  CHECK(same.tilde == g41);
  CHECK(same.index_over_g1 == 1);
  CHECK(same.index_over_g2 == 1);
}

TEST_CASE("the theorem pipeline") {
  const CoverReport r = theorem1_pipeline();
  auto integer = [&](const char* key) {
    const Fact* f = r.find(key);
    REQUIRE(f != nullptr);
    return std::get<long long>(f->value);
  };
  auto boolean = [&](const char* key) {
    const Fact* f = r.find(key);
    REQUIRE(f != nullptr);
    return std::get<bool>(f->value);
  };
  CHECK(integer("cover.degree") == 6);
  CHECK(integer("index.F_GammaTilde") == 24);
  CHECK(integer("index.Gamma41_GammaTilde") == 6);
  CHECK(integer("index.GammaPrime_GammaTilde") == 2);
  CHECK(integer("boundary.M41.genus") == 3);
  CHECK(integer("boundary.tilde.genus") == 13);
  CHECK(integer("fiber.genus") == 19);
  CHECK(integer("heegaard.lift") == 25);
  CHECK(integer("heegaard.fibration") == 39);
  CHECK(boolean("boundary.tilde.connected"));
  CHECK(boolean("doubled.indices_preserved"));
  CHECK(std::get<std::vector<long long>>(r.find("homology.M2")->value) == std::vector<long long>{0});
  CHECK(r.find("no.such.key") == nullptr);

  REQUIRE(r.levels.size() == 5);
  for (const auto& level : r.levels) {
    for (const auto& degrees : level.meridian_degrees) {
      long long sum = 0;
      for (long long d : degrees) sum += d;
      CHECK(sum == static_cast<long long>(level.index));
    }
    for (long long g : level.boundary_genus) CHECK(g >= 0);
  }
  // Index multiplicativity down the tower.
  CHECK(r.levels[3].index % r.levels[1].index == 0);
  CHECK(r.levels[4].index % r.levels[2].index == 0);
  CHECK(r.levels[4].index % r.levels[3].index == 0);
}
