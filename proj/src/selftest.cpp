#include "tetrus/cli/selftest.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>

#include "tetrus/abelian.hpp"
#include "tetrus/amalgam.hpp"
#include "tetrus/euler.hpp"
#include "tetrus/subgroup_graph.hpp"
#include "tetrus/surface/spin.hpp"
#include "tetrus/surface/tetrus_surface.hpp"
#include "tetrus/tangle.hpp"

namespace tetrus::cli {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

FreeWord random_word(Rng& rng, int max_length) {
  std::vector<Letter> letters;
  const int n = uniform(rng, 0, max_length);
  for (int i = 0; i < n; ++i) letters.push_back(static_cast<Letter>(uniform(rng, 0, kAlphabetSize - 1)));
  return FreeWord::from_letters(letters);
}

FreeWord random_nonempty(Rng& rng, int max_length) {
  for (;;) {
    FreeWord w = random_word(rng, max_length);
    if (!w.is_identity()) return w;
  }
}

FreeWord drop_letter(const FreeWord& w, std::size_t i) {
  std::vector<Letter> letters(w.letters().begin(), w.letters().end());
  letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(i));
  return FreeWord::from_letters(letters);
}

// Deletes letters one at a time while `fails` still holds.
FreeWord shrink_word(FreeWord w, const std::function<bool(const FreeWord&)>& fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < w.length(); ++i) {
      FreeWord shorter = drop_letter(w, i);
      if (fails(shorter)) {
        w = std::move(shorter);
        progress = true;
        break;
      }
    }
  }
  return w;
}

std::vector<FreeWord> shrink_words(std::vector<FreeWord> ws,
                                   const std::function<bool(const std::vector<FreeWord>&)>& fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < ws.size() && !progress; ++i) {
      auto fewer = ws;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
      if (fails(fewer)) {
        ws = std::move(fewer);
        progress = true;
      }
    }
    for (std::size_t i = 0; i < ws.size() && !progress; ++i) {
      for (std::size_t k = 0; k < ws[i].length() && !progress; ++k) {
        auto shorter = ws;
        shorter[i] = drop_letter(ws[i], k);
        if (fails(shorter)) {
          ws = std::move(shorter);
          progress = true;
        }
      }
    }
  }
  return ws;
}

std::string list_words(const std::vector<FreeWord>& ws) {
  std::string out = "<";
  for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? ", " : " ") + ws[i].str();
  return out + " >";
}

// Petal edges of the generators, with states renumbered by `perm_seed` and
// edges listed in shuffled order.
SubgroupGraph shuffled_petals(const std::vector<FreeWord>& gens, Rng& rng) {
  std::vector<SubgroupGraph::RawEdge> edges;
  int states = 1;
  for (const auto& g : gens) {
    const auto letters = g.letters();
    int prev = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const int next = i + 1 == letters.size() ? 0 : states++;
      const Letter l = letters[i];
      if (letter_sign(l) > 0) {
        edges.push_back({prev, letter_generator(l), next});
      } else {
        edges.push_back({next, letter_generator(l), prev});
      }
      prev = next;
    }
  }
  std::vector<int> perm(static_cast<std::size_t>(states));
  for (int i = 0; i < states; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (auto& e : edges) {
    e.source = perm[static_cast<std::size_t>(e.source)];
    e.target = perm[static_cast<std::size_t>(e.target)];
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return SubgroupGraph::from_edges(states, perm[0], edges);
}

SuiteResult fold_confluence(Rng& rng) {
  SuiteResult r{"fold confluence", 0, true, {}};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<FreeWord> gens;
    const int k = uniform(rng, 1, 4);
    for (int i = 0; i < k; ++i) gens.push_back(random_nonempty(rng, 8));
    // Same subgroup: shuffled, some inverted, a few Nielsen moves.
    std::vector<FreeWord> other = gens;
    std::shuffle(other.begin(), other.end(), rng);
    for (auto& w : other) {
      if (uniform(rng, 0, 1)) w = w.inverse();
    }
    const int moves = other.size() > 1 ? uniform(rng, 0, 3) : 0;
    for (int m = 0; m < moves; ++m) {
      const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(other.size()) - 1));
      auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(other.size()) - 2));
      if (j >= i) ++j;
      other[i] = other[i] * (uniform(rng, 0, 1) ? other[j] : other[j].inverse());
    }
    const std::uint64_t state = rng();
    auto fails = [&](const std::vector<FreeWord>& g) {
      Rng local(state);
      const SubgroupGraph a = graph_from_generators(g);
      return !(a == shuffled_petals(g, local));
    };
    ++r.cases;
    if (!(graph_from_generators(gens) == graph_from_generators(other)) || fails(gens)) {
      r.passed = false;
      r.witness = fails(gens) ? "fold order matters for " + list_words(shrink_words(gens, fails))
                              : list_words(gens) + " vs " + list_words(other);
      return r;
    }
  }
  return r;
}

struct Pool {
  std::vector<std::pair<std::string, SubgroupGraph>> graphs;
};

Pool subgroup_pool(Rng& rng) {
  Pool p;
  p.graphs.push_back({"Gamma_2", kernel_graph(CyclicHom::make(2, 1, 1))});
  p.graphs.push_back({"Gamma_4,1", kernel_graph(CyclicHom::make(4, 1, 1))});
  p.graphs.push_back({"Gamma'", coset_extension(p.graphs[0].second, derive_fibration_hom().hom)});
  p.graphs.push_back({"Lambda", graph_from_generators(tangle::lambda_generators())});
  for (int i = 0; i < 4; ++i) {
    const long long n = uniform(rng, 2, 9);
    CyclicHom f = CyclicHom::make(n, uniform(rng, 0, static_cast<int>(n) - 1), 1);
    p.graphs.push_back({"ker(x->" + std::to_string(f.image_x) + ", h->1 mod " + std::to_string(n) + ")",
                        kernel_graph(f)});
  }
  for (int i = 0; i < 3; ++i) {
    std::vector<FreeWord> gens{random_nonempty(rng, 5), random_nonempty(rng, 5)};
    p.graphs.push_back({list_words(gens), graph_from_generators(gens)});
  }
  return p;
}

SuiteResult intersect_conjunction(Rng& rng, const Pool& pool) {
  SuiteResult r{"intersection membership", 0, true, {}};
  const std::size_t n = pool.graphs.size();
  for (int trial = 0; trial < 1000; ++trial) {
    const auto& [na, a] = pool.graphs[static_cast<std::size_t>(trial) % n];
    const auto& [nb, b] = pool.graphs[static_cast<std::size_t>(trial / static_cast<int>(n)) % n];
    const SubgroupGraph both = intersect(a, b);
    FreeWord w;
    if (trial % 2 == 0) {
      w = random_word(rng, 14);
    } else {
      // Products of basis elements of the intersection land inside it.
      const auto basis = schreier_basis(both).basis;
      for (int k = uniform(rng, 0, 3); k > 0 && !basis.empty(); --k) {
        const auto& g = basis[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(basis.size()) - 1))];
        w = w * (uniform(rng, 0, 1) ? g : g.inverse());
      }
    }
    auto fails = [&](const FreeWord& u) {
      return membership(both, u) != (membership(a, u) && membership(b, u));
    };
    ++r.cases;
    if (fails(w)) {
      r.passed = false;
      r.witness = na + " and " + nb + " disagree on " + shrink_word(w, fails).str();
      return r;
    }
  }
  return r;
}

std::vector<std::pair<std::string, SubgroupGraph>> finite_index_graphs(const Pool& pool) {
  std::vector<std::pair<std::string, SubgroupGraph>> out;
  for (const auto& [name, g] : pool.graphs) {
    if (g.complete()) out.push_back({name, g});
  }
  const std::size_t base = out.size();
  for (std::size_t i = 0; i < base; ++i) {
    for (std::size_t j = i + 1; j < base; ++j) {
      out.push_back({out[i].first + " ^ " + out[j].first, intersect(out[i].second, out[j].second)});
    }
  }
  return out;
}

SuiteResult nielsen_schreier(const std::vector<std::pair<std::string, SubgroupGraph>>& graphs) {
  SuiteResult r{"Nielsen-Schreier rank", 0, true, {}};
  for (const auto& [name, g] : graphs) {
    ++r.cases;
    const auto idx = index(g);
    const std::size_t basis = schreier_basis(g).basis.size();
    if (!idx || g.rank() != *idx + 1 || basis != g.rank()) {
      r.passed = false;
      r.witness = name + ": index " + (idx ? std::to_string(*idx) : "infinite") + ", rank " +
                  std::to_string(g.rank()) + ", basis " + std::to_string(basis);
      return r;
    }
  }
  return r;
}

SuiteResult orbit_sums(Rng& rng, const std::vector<std::pair<std::string, SubgroupGraph>>& graphs) {
  SuiteResult r{"orbit sizes sum to index", 0, true, {}};
  for (const auto& [name, g] : graphs) {
    std::vector<std::vector<FreeWord>> sets{{tangle::meridian_h()}, {tangle::meridian_m()},
                                            tangle::lambda_generators()};
    for (int i = 0; i < 5; ++i) sets.push_back({random_word(rng, 8), random_word(rng, 8)});
    for (const auto& gens : sets) {
      ++r.cases;
      std::size_t sum = 0;
      for (std::size_t s : orbit_decomposition(g, gens)) sum += s;
      if (sum != g.state_count()) {
        r.passed = false;
        r.witness = name + " under " + list_words(gens);
        return r;
      }
    }
  }
  return r;
}

DoubledWord random_doubled(Rng& rng) {
  std::vector<Syllable> raw;
  const int n = uniform(rng, 1, 4);
  for (int i = 0; i < n; ++i) {
    raw.push_back({uniform(rng, 0, 1) ? Side::mirror : Side::plain, random_nonempty(rng, 5)});
  }
  return DoubledWord(raw);
}

FreeWord random_lambda(Rng& rng) {
  const auto gens = tangle::lambda_generators();
  FreeWord w;
  for (int k = uniform(rng, 1, 3); k > 0; --k) {
    const auto& g = gens[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(gens.size()) - 1))];
    w = w * (uniform(rng, 0, 1) ? g : g.inverse());
  }
  return w;
}

SuiteResult normal_form_canonical(Rng& rng, const AmalgamContext& ctx) {
  SuiteResult r{"amalgam normal form", 0, true, {}};
  for (int trial = 0; trial < 500; ++trial) {
    const DoubledWord w = random_doubled(rng);
    // Equal element: move an element of Lambda across from one copy to the other
    // at a random cut, and pad with a cancelling pair.
    std::vector<Syllable> raw = w.syllables();
    const auto cut = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(raw.size())));
    const FreeWord lam = random_lambda(rng);
    const Side s = uniform(rng, 0, 1) ? Side::mirror : Side::plain;
    raw.insert(raw.begin() + static_cast<std::ptrdiff_t>(cut),
               {{s, lam}, {other(s), lam.inverse()}});
    const FreeWord u = random_nonempty(rng, 3);
    raw.insert(raw.begin(), {{Side::plain, u}, {Side::plain, u.inverse()}});
    const DoubledWord v(raw);
    ++r.cases;
    if (!(normal_form(ctx, w) == normal_form(ctx, v)) || !amalgam_equal(ctx, w, v)) {
      r.passed = false;
      r.witness = w.str() + " vs " + v.str() + ": " + normal_form(ctx, w).str() + " != " + normal_form(ctx, v).str();
      return r;
    }
  }
  return r;
}

SuiteResult kernel_soundness(Rng& rng, const AmalgamContext& ctx) {
  SuiteResult r{"kernel decomposition", 0, true, {}};
  for (const long long n : {2LL, 4LL}) {
    const EquivariantHom f{CyclicHom::make(n, 1, 1)};
    for (int trial = 0; trial < 200; ++trial) {
      DoubledWord w = random_doubled(rng);
      const long long image = hom_image(f, w);
      if (image != 0) {
        w = w * DoubledWord::single(uniform(rng, 0, 1) ? Side::mirror : Side::plain, FreeWord::x().pow(-image));
      }
      ++r.cases;
      std::string problem;
      try {
        const auto parts = kernel_decompose(ctx, f, w);
        DoubledWord product;
        for (const auto& p : parts) {
          if (p.syllables().size() > 1) problem = "factor " + p.str() + " is not single-sided";
          if (hom_image(f, p) != 0) problem = "factor " + p.str() + " is not in the kernel";
          product = product * p;
        }
        if (problem.empty() && !amalgam_equal(ctx, product, w)) problem = "factors do not multiply back";
      } catch (const Error& e) {
        problem = e.what();
      }
      if (!problem.empty()) {
        r.passed = false;
        r.witness = "mod " + std::to_string(n) + ": " + w.str() + ": " + problem;
        return r;
      }
    }
  }
  return r;
}

SuiteResult parity_guard() {
  SuiteResult r{"Riemann-Hurwitz parity guard", 0, true, {}};
  for (const long long base : {2LL, 0LL, -2LL, -4LL}) {
    for (long long k = 0; k <= 40; ++k) {
      ++r.cases;
      const long long chi = riemann_hurwitz(base, 2, simple_double_branching(k));
      bool threw = false;
      long long genus = -1;
      try {
        genus = genus_from_chi(chi, 0);
      } catch (const InvariantViolation&) {
        threw = true;
      }
      const bool should_throw = chi % 2 != 0 || chi > 2;
      if (threw != should_throw || (!threw && 2 - 2 * genus != chi)) {
        r.passed = false;
        r.witness = "chi base " + std::to_string(base) + ", " + std::to_string(k) + " branch points";
        return r;
      }
    }
  }
  // Odd Euler characteristics with no boundary are rejected outright.
  for (long long chi = -41; chi <= 1; chi += 2) {
    ++r.cases;
    bool threw = false;
    try {
      (void)genus_from_chi(chi, 0);
    } catch (const InvariantViolation&) {
      threw = true;
    }
    if (!threw) {
      r.passed = false;
      r.witness = "closed surface with chi " + std::to_string(chi) + " accepted";
      return r;
    }
  }
  ++r.cases;
  try {
    (void)riemann_hurwitz(2, 2, {BranchPointDatum{{3}}});
    r.passed = false;
    r.witness = "local degree 3 accepted in a double cover";
  } catch (const InvalidArgument&) {
  }
  return r;
}

SuiteResult intersection_symmetry(Rng& rng) {
  SuiteResult r{"intersection numbers", 0, true, {}};
  const auto fs = surface::build_fiber_surface();
  const surface::CurveSystem lambdas{fs.link.projected, {}};
  const auto pool = surface::enumerate_spin_curves(fs.df, lambdas, 2);
  auto pick = [&](const std::vector<surface::Curve>& from) {
    const auto& c = from[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(from.size()) - 1))];
    return uniform(rng, 0, 1) ? c.reversed() : c;
  };
  for (int trial = 0; trial < 300; ++trial) {
    const surface::Curve a = pick(pool);
    surface::Curve b = trial % 3 == 0 ? pick(pool) : pick(fs.link.projected);
    ++r.cases;
    std::string problem;
    try {
      const auto ab = surface::intersection_numbers(fs.df, a, b);
      const auto ba = surface::intersection_numbers(fs.df, b, a);
      const auto moved = surface::intersection_numbers(fs.df, surface::apply_map(fs.d_sigma, a),
                                                       surface::apply_map(fs.d_sigma, b));
      if (ab.geometric != ba.geometric) problem = "geometric count not symmetric";
      if (ab.algebraic != -ba.algebraic) problem = "algebraic count not antisymmetric";
      if (std::llabs(ab.algebraic) > ab.geometric) problem = "algebraic exceeds geometric";
      if (!(moved == ab)) problem = "counts change under the monodromy";
    } catch (const InvariantViolation&) {
      // Two pool curves through a common point are not in general position.
      --r.cases;
      continue;
    }
    if (!problem.empty()) {
      r.passed = false;
      r.witness = problem + ": " + surface::describe(fs.df, a) + " | " + surface::describe(fs.df, b);
      return r;
    }
  }
  return r;
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& options) {
  Rng rng(options.seed);
  std::vector<SuiteResult> out;
  auto guarded = [&](const std::string& name, const std::function<SuiteResult()>& suite) {
    try {
      out.push_back(suite());
    } catch (const std::exception& e) {
      out.push_back({name, 0, false, std::string("exception: ") + e.what()});
    }
  };
  guarded("fold confluence", [&] { return fold_confluence(rng); });
  const Pool pool = subgroup_pool(rng);
  guarded("intersection membership", [&] { return intersect_conjunction(rng, pool); });
  const auto graphs = finite_index_graphs(pool);
  guarded("Nielsen-Schreier rank", [&] { return nielsen_schreier(graphs); });
  guarded("orbit sizes sum to index", [&] { return orbit_sums(rng, graphs); });
  const AmalgamContext ctx = AmalgamContext::boundary_subgroup();
  guarded("amalgam normal form", [&] { return normal_form_canonical(rng, ctx); });
  guarded("kernel decomposition", [&] { return kernel_soundness(rng, ctx); });
  guarded("Riemann-Hurwitz parity guard", [&] { return parity_guard(); });
  guarded("intersection numbers", [&] { return intersection_symmetry(rng); });
  return out;
}

void add_selftest_section(Report& report, const std::vector<SuiteResult>& results) {
  Section& s = report.add_section("selftest");
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    s.add(r.name, r.passed,
          std::to_string(r.cases) + " cases" + (r.witness.empty() ? "" : "; counterexample: " + r.witness));
  }
  s.add("status", all);
}

}  // namespace tetrus::cli
