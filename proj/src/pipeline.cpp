#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "tetrus/abelian.hpp"
#include "tetrus/amalgam.hpp"
#include "tetrus/cover_tower.hpp"
#include "tetrus/surface/tetrus_surface.hpp"
#include "tetrus/tangle.hpp"

namespace tetrus::cover {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation("pipeline check failed: " + what);
}

std::vector<long long> to_longs(const IntegerMatrixNF& nf) {
  std::vector<long long> out;
  for (const auto& f : nf.factors) out.push_back(static_cast<long long>(f));
  return out;
}

// A subgroup is normal iff its graph looks the same from every state.
bool is_normal(const SubgroupGraph& g) {
  std::vector<SubgroupGraph::RawEdge> edges;
  const auto n = static_cast<int>(g.state_count());
  for (int s = 0; s < n; ++s) {
    for (int gen = 0; gen < kRank; ++gen) {
      const int t = g.target(s, make_letter(gen, 1));
      if (t != SubgroupGraph::kNone) edges.push_back({s, gen, t});
    }
  }
  for (int s = 1; s < n; ++s) {
    if (!(SubgroupGraph::from_edges(n, s, edges) == g)) return false;
  }
  return true;
}

TowerLevel level(const std::string& name, const CoverAnalysis& a) {
  TowerLevel out{name, a.index, {}, a.boundary_components(), {}, {}};
  for (const auto& m : a.meridians) out.meridian_degrees.push_back(m.datum.local_degrees);
  for (const auto& b : a.boundary) {
    out.boundary_euler.push_back(b.euler_characteristic);
    out.boundary_genus.push_back(b.genus);
  }
  return out;
}

long long as_long(std::size_t v) { return static_cast<long long>(v); }

}  // namespace

CoverReport theorem1_pipeline(const PipelineOptions& options) {
  CoverReport report;
  auto fact = [&](std::string key, FactValue value, std::string note) {
    for (const auto& f : report.facts) require(f.key != key, "duplicate report key " + key);
    report.facts.push_back({std::move(key), std::move(value), std::move(note)});
  };

  const MeridianSpec spec = MeridianSpec::tangle();
  const FreeWord h = tangle::meridian_h();
  const FreeWord m = tangle::meridian_m();

  // Group side: the two cyclic covers and the fibration cover of M_2.
  const SubgroupGraph whole = graph_from_generators({FreeWord::x(), FreeWord::h()});
  const SubgroupGraph gamma2 = kernel_graph(CyclicHom::make(2, 1, 1));
  const SubgroupGraph gamma41 = kernel_graph(CyclicHom::make(4, 1, 1));
  const FibrationHom fib = derive_fibration_hom();
  require(fib.gamma2 == gamma2, "fibration homomorphism is defined on the twofold cover");
  const SubgroupGraph gamma_prime = coset_extension(gamma2, fib.hom);
  const Diamond diamond = complete_diamond(gamma41, gamma_prime, spec);

  const std::size_t i2 = *index(gamma2);
  const std::size_t i41 = *index(gamma41);
  const std::size_t ip = *index(gamma_prime);
  require(ip % i2 == 0, "Gamma' lies in Gamma_2");
  for (const auto& w : fib.schreier.basis) require(membership(gamma2, w), "Schreier basis lies in Gamma_2");

  fact("index.F_Gamma2", as_long(i2), "twofold cover of the ball branched over the tangle");
  fact("index.F_Gamma41", as_long(i41), "fourfold cyclic cover with x -> 1, h -> 1");
  fact("index.Gamma2_GammaPrime", as_long(ip / i2), "sixfold cover of M_2 from its fibration");
  fact("index.Gamma41_GammaTilde", as_long(diamond.index_over_g1), "completion of the diamond over Gamma_4,1");
  fact("index.GammaPrime_GammaTilde", as_long(diamond.index_over_g2), "completion of the diamond over Gamma'");
  require(diamond.index == i41 * diamond.index_over_g1, "index multiplicative through Gamma_4,1");
  require(diamond.index == ip * diamond.index_over_g2, "index multiplicative through Gamma'");
  require(*index(diamond.tilde) == diamond.index, "intersection index from the graph");
  fact("index.F_GammaTilde", as_long(diamond.index), "equal through both sides of the diamond");
  fact("cover.degree", as_long(diamond.index_over_g1), "degree of the cover of M_4,1");

  const auto h1 = abelianized_quotient(gamma2, {h.pow(2), m.pow(2)});
  fact("homology.M2", to_longs(h1), "invariant factors of H_1 of the filled twofold cover");
  fact("fibration.hom", fib.hom.values, "images of the Schreier basis of Gamma_2 in Z/6");
  fact("fibration.normal", is_normal(gamma_prime), "Gamma' is normal in F");
  require(diamond.fills_compatibly(), "meridians lift with unchanged local degree, so the cover is unbranched");
  fact("cover.unbranched", diamond.fills_compatibly(), "filling disks lift to filling disks");

  // Orbit data at every level.
  const CoverAnalysis a_whole = analyze_branched_cover(whole, spec);
  const CoverAnalysis a2 = analyze_branched_cover(gamma2, spec);
  const CoverAnalysis a41 = analyze_branched_cover(gamma41, spec);
  const CoverAnalysis ap = analyze_branched_cover(gamma_prime, spec);
  const CoverAnalysis at = analyze_branched_cover(diamond.tilde, spec);
  for (const auto* a : {&a_whole, &a2, &a41, &ap, &at}) {
    for (const auto& mer : a->meridians) {
      long long sum = 0;
      for (long long d : mer.datum.local_degrees) sum += d;
      require(sum == as_long(a->index), "meridian orbit sizes sum to the index");
    }
  }
  report.levels = {level("F", a_whole), level("Gamma_2", a2), level("Gamma_4,1", a41), level("Gamma'", ap),
                   level("Gamma~", at)};

  require(a41.boundary_components() == 1, "boundary of M_4,1 connected");
  fact("boundary.M41.connected", a41.boundary_components() == 1, "Lambda acts transitively on cosets");
  fact("boundary.M41.genus", a41.boundary.front().genus, "fourfold cover of the sphere branched at four points");
  fact("meridians.M41", std::vector<long long>{as_long(a41.meridians[0].datum.local_degrees.size()),
                                               as_long(a41.meridians[1].datum.local_degrees.size())},
       "preimage components of the two meridians");
  require(at.boundary_components() == 1, "boundary of the final cover connected");
  const long long tilde_chi = at.boundary.front().euler_characteristic;
  require(tilde_chi == as_long(diamond.index_over_g1) * a41.boundary.front().euler_characteristic,
          "boundary Euler characteristic multiplies under the unbranched cover");
  fact("boundary.tilde.connected", at.boundary_components() == 1, "one Lambda-orbit on cosets of Gamma~");
  fact("boundary.tilde.euler", tilde_chi, "sixfold multiple of the base");
  fact("boundary.tilde.genus", at.boundary.front().genus, "genus of the doubling surface");

  // Doubling: indices survive iff Lambda still acts transitively, since the
  // equivariant homomorphism on the amalgam is then surjective on Lambda.
  bool doubled = true;
  for (const auto* a : {&a2, &a41, &ap, &at}) doubled = doubled && a->boundary_components() == 1;
  for (const long long n : {2LL, 4LL}) {
    const CyclicHom f = CyclicHom::make(n, 1, 1);
    long long g = n;
    for (const auto& w : spec.boundary_generators) g = std::gcd(g, hom_image(f, w));
    doubled = doubled && g == 1;
  }
  {
    const AmalgamContext ctx = AmalgamContext::boundary_subgroup();
    const EquivariantHom f{CyclicHom::make(2, 1, 1)};
    const DoubledWord probe = DoubledWord::parse("x ~x^-1");
    const auto parts = kernel_decompose(ctx, f, probe);
    DoubledWord product;
    for (const auto& p : parts) product = product * p;
    doubled = doubled && amalgam_equal(ctx, product, probe);
  }
  require(doubled, "doubled covers have the same indices");
  fact("doubled.indices_preserved", doubled, "Lambda transitive at every level of the tower");

  // Link components from the group side: circles over the two branch arcs.
  const long long link_group = as_long(ap.meridians[0].datum.local_degrees.size()) +
                               as_long(ap.meridians[1].datum.local_degrees.size());

  // Surface side.
  const surface::FiberSurface fs = surface::build_fiber_surface(1, 0);
  fact("surface.F.euler", fs.f.euler_characteristic(), "two hexagons and three squares");
  fact("surface.F.boundary", as_long(fs.f.boundary_components()), "boundary circles of F");
  fact("surface.F.genus", fs.f.genus(), "one-holed torus");
  require(as_long(fs.f.vertex_count()) == as_long(surface::vertex_count_by_rotation(fs.f)),
          "vertex count agrees with the corner rotation walk");
  const auto order = fs.sigma.order(fs.f);
  require(order.has_value(), "monodromy has finite order");
  fact("surface.monodromy_order", static_cast<long long>(*order), "first-return map of F");
  fact("surface.DF.closed", fs.df.closed(), "double of F");
  fact("surface.DF.genus", fs.df.genus(), "double of F");
  require(*fs.d_sigma.order(fs.df) == *order, "doubled monodromy has the same order");
  require(*fs.involution.order(fs.df) == 2, "doubling involution has order two");

  std::set<surface::Turns> heights;
  for (const auto& c : fs.link.components) heights.insert(c.height);
  fact("link.components", as_long(fs.link.components.size()), "lifts of the two branch curves");
  fact("link.heights_distinct", heights.size() == fs.link.components.size(), "components at distinct heights");
  fact("link.components_group", link_group, "meridian orbits on cosets of Gamma'");
  require(link_group == as_long(fs.link.components.size()), "link components agree between group and surface");
  fact("link.projected_curves", as_long(fs.link.projected.size()), "distinct projections to DF");
  require(fs.link.projected.size() == 6, "six projected curves");
  const surface::CombinatorialMap half_turn = fs.d_sigma.power(*order / 2);
  bool fixed = true;
  for (const auto& c : fs.link.projected) {
    fixed = fixed && surface::same_curve_setwise(surface::apply_map(half_turn, c), c);
  }
  fact("link.half_turn_fixes_curves", fixed, "(D sigma)^3 preserves each projected curve");

  {
    const auto alt = surface::build_F(surface::derive_gluing(-2, 1, -1, 1));
    fact("surface.bezout_isomorphic", surface::isomorphic(fs.f, alt), "F rebuilt from another Bezout pair");
  }

  // Spin search and the fibre of the pulled-back fibration.
  const surface::CurveSystem lambdas{fs.link.projected, {}};
  report.spin = surface::search_spin_system(fs.df, lambdas, options.search_bound, {fs.d_sigma, fs.involution});
  fact("spin.found", report.spin.found, report.spin.message);
  if (!report.spin.found) {
    fact("spin.search_bound", static_cast<long long>(options.search_bound), "chords per polygon");
    return report;
  }
  std::ostringstream witness;
  for (std::size_t i = 0; i < report.spin.system.curves.size(); ++i) {
    witness << "gamma" << i << ": " << surface::describe(fs.df, report.spin.system.curves[i]) << '\n';
  }
  report.spin_witness = witness.str();
  require(report.spin.check.ok, "spin witness satisfies the intersection criterion");
  fact("spin.search_bound", static_cast<long long>(options.search_bound), "chords per polygon");
  fact("spin.components", as_long(report.spin.system.curves.size()), "curves in the witness system");
  fact("spin.total_intersections", report.spin.check.total_geometric, "witness against the projected curves");
  fact("spin.minimum_within_bound", report.spin.minimum_total, "smallest total over valid systems");
  fact("spin.witness_signs", std::vector<long long>(report.spin.check.lambda_signs.begin(),
                                                    report.spin.check.lambda_signs.end()),
       "orientations of the projected curves");
  fact("spin.symmetry_classes", as_long(report.spin.symmetry_classes), "valid minimal systems up to symmetry");

  const auto fiber = surface::spun_fiber_genus(fs.df, report.spin.system, lambdas);
  fact("fiber.branch_points", fiber.branch_points, "two per intersection point");
  fact("fiber.genus", fiber.genus, "double of DF branched at those points");

  // Heegaard genera: M_4,1 splits along a surface of genus g(boundary) + 1,
  // and doubling gives 2 (g + 1) - g.
  const long long g_bdry = a41.boundary.front().genus;
  const long long base_splitting = 2 * (g_bdry + 1) - g_bdry;
  fact("heegaard.base_double", base_splitting, "splitting of the doubled base");
  const HeegaardGenera hg = heegaard_genera(fiber.genus, at.boundary.front().genus,
                                            as_long(diamond.index_over_g1), base_splitting);
  fact("heegaard.lift", hg.lift, "lifted splitting of the double");
  fact("heegaard.fibration", hg.fibration, "splitting from the fibration");
  return report;
}

}  // namespace tetrus::cover
