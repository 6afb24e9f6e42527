#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tetrus/euler.hpp"
#include "tetrus/subgroup_graph.hpp"
#include "tetrus/surface/spin.hpp"
#include "tetrus/word.hpp"

namespace tetrus::cover {

// Meridians of the branch locus and the boundary subgroup, as words in F(x, h).
struct MeridianSpec {
  std::vector<FreeWord> meridians;
  std::vector<FreeWord> boundary_generators;
  // Boundary circles of the boundary surface; filled in as branch points when
  // the boundary is capped off. May be empty, in which case no boundary
  // Euler characteristics are computed.
  std::vector<FreeWord> boundary_loops;

  // h and h x h x^-2 with Lambda and its four boundary circles. Validated.
  static MeridianSpec tangle();
  // Throws InvariantViolation unless every meridian and loop lies in the
  // boundary subgroup.
  void validate() const;
};

struct MeridianOrbits {
  FreeWord meridian;
  BranchPointDatum datum;  // one local degree per preimage component
};

// One component of the preimage of the capped-off boundary surface.
struct BoundaryComponent {
  std::size_t degree = 0;                         // Lambda-orbit size
  std::vector<BranchPointDatum> loop_degrees;     // per boundary loop
  long long euler_characteristic = 0;
  long long genus = 0;
};

struct CoverAnalysis {
  std::size_t index = 0;
  std::vector<MeridianOrbits> meridians;
  std::vector<BoundaryComponent> boundary;  // one per Lambda-orbit
  std::size_t boundary_components() const { return boundary.size(); }
};

// Orbit data of the meridians and of Lambda acting on the cosets of `g`.
// Throws InfiniteIndex if `g` is not complete.
CoverAnalysis analyze_branched_cover(const SubgroupGraph& g, const MeridianSpec& spec);

struct FillingCheck {
  FreeWord meridian;
  bool compatible = false;  // every orbit over the intersection keeps its size over g1
};

struct Diamond {
  SubgroupGraph tilde;
  std::size_t index = 0;          // [F : tilde]
  std::size_t index_over_g1 = 0;  // [g1 : tilde]
  std::size_t index_over_g2 = 0;  // [g2 : tilde]
  std::vector<FillingCheck> filling;
  bool fills_compatibly() const;
};

// Intersection of two finite-index subgroups with its relative indices, and
// for each meridian whether the cover over g1 is unbranched along it.
Diamond complete_diamond(const SubgroupGraph& g1, const SubgroupGraph& g2, const MeridianSpec& spec);

struct HeegaardGenera {
  long long lift = 0;
  long long fibration = 0;
  friend bool operator==(const HeegaardGenera&, const HeegaardGenera&) = default;
};

// lift = 1 + degree (base - 1) from multiplicativity of chi of the lifted
// splitting surface; fibration = 2 fiber_genus + 1.
HeegaardGenera heegaard_genera(long long fiber_genus, long long doubling_surface_genus, long long cover_degree,
                               long long base_splitting_genus);

// Report of the full construction.
using FactValue = std::variant<long long, bool, std::vector<long long>, std::string>;

struct Fact {
  std::string key;
  FactValue value;
  std::string note;
};

struct TowerLevel {
  std::string name;
  std::size_t index = 0;
  std::vector<std::vector<long long>> meridian_degrees;
  std::size_t boundary_components = 0;
  std::vector<long long> boundary_euler;
  std::vector<long long> boundary_genus;
};

struct CoverReport {
  std::vector<TowerLevel> levels;
  std::vector<Fact> facts;
  surface::SpinSearchResult spin;
  std::string spin_witness;  // human-readable chords of the witness curves

  const Fact* find(const std::string& key) const;
};

struct PipelineOptions {
  int search_bound = 2;
};

// Runs the group, amalgam and surface computations end to end and
// cross-checks every quantity that has two derivations. Throws
// InvariantViolation naming the failed check.
CoverReport theorem1_pipeline(const PipelineOptions& options = {});

}  // namespace tetrus::cover
