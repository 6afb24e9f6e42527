#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "tetrus/word.hpp"

namespace tetrus {

// Folded, basepointed Stallings core graph of a finitely generated subgroup of
// F(x, h). States are stored in canonical breadth-first order from the
// basepoint (state 0), so two graphs represent the same subgroup iff they
// compare equal. When every state has both outgoing x and h edges the graph is
// the coset table of a finite-index subgroup.
class SubgroupGraph {
 public:
  static constexpr int kNone = -1;
  using Row = std::array<int, kAlphabetSize>;  // target per letter, or kNone

  // The trivial subgroup: a single state, no edges.
  SubgroupGraph();

  // Folds, trims to the core and canonicalizes an arbitrary edge list.
  // `edges` holds (source, generator in {0,1}, target) triples.
  struct RawEdge {
    int source;
    int generator;
    int target;
  };
  static SubgroupGraph from_edges(int state_count, int basepoint, const std::vector<RawEdge>& edges);

  std::size_t state_count() const { return table_.size(); }
  bool complete() const { return complete_; }
  const Row& row(int state) const { return table_.at(static_cast<std::size_t>(state)); }
  int target(int state, Letter l) const { return table_[static_cast<std::size_t>(state)][l]; }

  // Follows `w` from `state`; nullopt as soon as an edge is missing.
  std::optional<int> trace(int state, const FreeWord& w) const;

  // Rank of the represented free subgroup: E - V + 1 of the core.
  std::size_t rank() const;

  // Shortlex-minimal path label from the basepoint to each state.
  const std::vector<FreeWord>& transversal() const { return transversal_; }

  friend bool operator==(const SubgroupGraph& a, const SubgroupGraph& b) {
    return a.table_ == b.table_;
  }

 private:
  explicit SubgroupGraph(std::vector<Row> canonical_table);
  void finish();

  std::vector<Row> table_;
  std::vector<FreeWord> transversal_;
  bool complete_ = false;
};

SubgroupGraph graph_from_generators(const std::vector<FreeWord>& gens);

// Based Cayley graph of Z/n for a surjective f; the kernel of f.
SubgroupGraph kernel_graph(const CyclicHom& f);

bool membership(const SubgroupGraph& g, const FreeWord& w);

// Index of the subgroup, or nullopt for infinite index.
std::optional<std::size_t> index(const SubgroupGraph& g);

SubgroupGraph intersect(const SubgroupGraph& g1, const SubgroupGraph& g2);

// Right action on cosets: perm[s] = s . w. Requires a complete graph.
std::vector<int> coset_action(const SubgroupGraph& g, const FreeWord& w);

// Orbits of the group generated by the permutations of `gens`, listed in
// order of their smallest state; each orbit is sorted ascending.
std::vector<std::vector<int>> orbits(const SubgroupGraph& g, const std::vector<FreeWord>& gens);
std::vector<std::size_t> orbit_decomposition(const SubgroupGraph& g,
                                             const std::vector<FreeWord>& gens);

// Free basis of the subgroup from the shortlex spanning tree. Basis entries
// correspond to the non-tree positive edges (state, generator) ordered by
// state then generator; `edge_index` maps every positive edge to its basis
// position or kNone for tree edges.
struct SchreierData {
  std::vector<FreeWord> transversal;
  std::vector<FreeWord> basis;
  std::vector<std::array<int, kRank>> edge_index;
};
SchreierData schreier_basis(const SubgroupGraph& g);

// Exponent vector of a subgroup element in the Schreier basis. Throws
// InvalidArgument if `w` is not in the subgroup.
std::vector<long long> rewrite_abelian(const SubgroupGraph& g, const SchreierData& s,
                                       const FreeWord& w);

// Homomorphism from a subgroup's Schreier basis to Z/modulus.
struct InnerHom {
  long long modulus = 1;
  std::vector<long long> values;  // one residue per Schreier basis element
};

long long inner_image(const SubgroupGraph& g, const SchreierData& s, const InnerHom& f,
                      const FreeWord& w);

// Subgroup of F given by the kernel of `inner` on the subgroup of `outer`.
SubgroupGraph coset_extension(const SubgroupGraph& outer, const InnerHom& inner);

// Shortlex-minimal representative of the right coset (subgroup) . w.
FreeWord coset_reduce(const SubgroupGraph& g, const FreeWord& w);

}  // namespace tetrus
