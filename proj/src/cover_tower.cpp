#include "tetrus/cover_tower.hpp"

#include <algorithm>
#include <set>

#include "tetrus/tangle.hpp"

namespace tetrus::cover {

namespace {

// Cycle lengths of `perm` on the states of `subset`, in order of smallest state.
std::vector<long long> cycle_lengths(const std::vector<int>& perm, const std::vector<int>& subset) {
  std::vector<long long> out;
  std::set<int> seen;
  for (int s : subset) {
    if (seen.count(s)) continue;
    long long len = 0;
    for (int v = s; !seen.count(v); v = perm[static_cast<std::size_t>(v)]) {
      seen.insert(v);
      ++len;
    }
    out.push_back(len);
  }
  return out;
}

}  // namespace

MeridianSpec MeridianSpec::tangle() {
  MeridianSpec spec{{tangle::meridian_h(), tangle::meridian_m()}, tangle::lambda_generators(),
                    tangle::boundary_loops()};
  spec.validate();
  return spec;
}

void MeridianSpec::validate() const {
  if (boundary_generators.empty()) throw InvalidArgument("boundary subgroup needs generators");
  const SubgroupGraph lambda = graph_from_generators(boundary_generators);
  for (const auto& w : meridians) {
    if (!membership(lambda, w)) throw InvariantViolation("meridian " + w.str() + " is not in the boundary subgroup");
  }
  for (const auto& w : boundary_loops) {
    if (!membership(lambda, w)) throw InvariantViolation("boundary loop " + w.str() + " is not in the boundary subgroup");
  }
  if (!boundary_loops.empty()) {
    FreeWord product;
    for (const auto& w : boundary_loops) product = product * w;
    if (!product.is_identity()) throw InvariantViolation("boundary loops do not multiply to the identity");
  }
}

CoverAnalysis analyze_branched_cover(const SubgroupGraph& g, const MeridianSpec& spec) {
  if (!g.complete()) throw InfiniteIndex();
  CoverAnalysis out;
  out.index = g.state_count();
  std::vector<int> all(out.index);
  for (std::size_t s = 0; s < out.index; ++s) all[s] = static_cast<int>(s);

  for (const auto& w : spec.meridians) {
    out.meridians.push_back({w, {cycle_lengths(coset_action(g, w), all)}});
  }

  std::vector<std::vector<int>> loop_perms;
  for (const auto& w : spec.boundary_loops) loop_perms.push_back(coset_action(g, w));
  for (const auto& orbit : orbits(g, spec.boundary_generators)) {
    BoundaryComponent comp;
    comp.degree = orbit.size();
    for (const auto& perm : loop_perms) comp.loop_degrees.push_back({cycle_lengths(perm, orbit)});
    if (!loop_perms.empty()) {
      // The capped boundary is a sphere with one branch point per loop.
      comp.euler_characteristic =
          riemann_hurwitz(2, static_cast<long long>(comp.degree), comp.loop_degrees);
      comp.genus = genus_from_chi(comp.euler_characteristic, 0);
    }
    out.boundary.push_back(std::move(comp));
  }
  return out;
}

bool Diamond::fills_compatibly() const {
  return std::all_of(filling.begin(), filling.end(), [](const FillingCheck& f) { return f.compatible; });
}

Diamond complete_diamond(const SubgroupGraph& g1, const SubgroupGraph& g2, const MeridianSpec& spec) {
  if (!g1.complete() || !g2.complete()) throw InfiniteIndex();
  Diamond out;
  out.tilde = intersect(g1, g2);
  if (!out.tilde.complete()) throw InvariantViolation("intersection of finite-index subgroups has infinite index");
  out.index = out.tilde.state_count();
  const std::size_t i1 = g1.state_count();
  const std::size_t i2 = g2.state_count();
  if (out.index % i1 != 0 || out.index % i2 != 0) {
    throw InvariantViolation("index of the intersection is not a multiple of both indices");
  }
  out.index_over_g1 = out.index / i1;
  out.index_over_g2 = out.index / i2;

  // Each coset of tilde lies over the coset of g1 reached by its transversal word.
  std::vector<int> down(out.index);
  for (std::size_t s = 0; s < out.index; ++s) {
    down[s] = *g1.trace(0, out.tilde.transversal()[s]);
  }
  for (std::size_t s = 0; s < out.index; ++s) {
    for (int gen = 0; gen < kRank; ++gen) {
      const Letter l = make_letter(gen, 1);
      if (down[static_cast<std::size_t>(out.tilde.target(static_cast<int>(s), l))] != g1.target(down[s], l)) {
        throw InvariantViolation("intersection does not cover g1");
      }
    }
  }
  for (const auto& w : spec.meridians) {
    const auto up = coset_action(out.tilde, w);
    const auto below = coset_action(g1, w);
    bool ok = true;
    for (std::size_t s = 0; s < out.index && ok; ++s) {
      long long len_up = 0;
      int v = static_cast<int>(s);
      do {
        v = up[static_cast<std::size_t>(v)];
        ++len_up;
      } while (v != static_cast<int>(s));
      long long len_below = 0;
      int u = down[s];
      do {
        u = below[static_cast<std::size_t>(u)];
        ++len_below;
      } while (u != down[s]);
      ok = len_up == len_below;
    }
    out.filling.push_back({w, ok});
  }
  return out;
}

HeegaardGenera heegaard_genera(long long fiber_genus, long long doubling_surface_genus, long long cover_degree,
                               long long base_splitting_genus) {
  if (fiber_genus < 1 || doubling_surface_genus < 1 || cover_degree < 1 || base_splitting_genus < 1) {
    throw InvalidArgument("Heegaard genus inputs must be positive");
  }
  return {1 + cover_degree * (base_splitting_genus - 1), 2 * fiber_genus + 1};
}

const Fact* CoverReport::find(const std::string& key) const {
  for (const auto& f : facts) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

}  // namespace tetrus::cover
