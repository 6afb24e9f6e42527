#include "tetrus/subgroup_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace tetrus {

namespace {

// Mutable multigraph used only while folding.
class Folder {
 public:
  explicit Folder(int n) : parent_(static_cast<std::size_t>(n)), adj_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int add_vertex() {
    parent_.push_back(static_cast<int>(parent_.size()));
    adj_.emplace_back();
    return parent_.back();
  }

  void add_edge(int u, int generator, int v) {
    adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(2 * generator)].push_back(v);
    adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(2 * generator + 1)].push_back(u);
  }

  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      auto& p = parent_[static_cast<std::size_t>(v)];
      p = parent_[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  }

  void fold() {
    std::vector<int> work(parent_.size());
    std::iota(work.begin(), work.end(), 0);
    while (!work.empty()) {
      int v = find(work.back());
      work.pop_back();
      for (std::size_t l = 0; l < kAlphabetSize; ++l) {
        auto& list = adj_[static_cast<std::size_t>(v)][l];
        for (int& t : list) t = find(t);
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        if (list.size() >= 2) {
          int a = list[0];
          int b = list[1];
          merge(a, b);
          work.push_back(a);
          work.push_back(v);
          break;
        }
      }
    }
  }

  // Returns the canonical table of the core containing `base`.
  std::vector<SubgroupGraph::Row> core_table(int base) {
    base = find(base);
    const std::size_t n = parent_.size();
    std::vector<SubgroupGraph::Row> out(n);
    std::vector<bool> alive(n, false);
    for (std::size_t v = 0; v < n; ++v) {
      out[v].fill(SubgroupGraph::kNone);
      if (find(static_cast<int>(v)) != static_cast<int>(v)) continue;
      alive[v] = true;
      for (std::size_t l = 0; l < kAlphabetSize; ++l) {
        auto& list = adj_[v][l];
        if (!list.empty()) out[v][l] = find(list.front());
      }
    }
    // Restrict to the component of the basepoint.
    std::vector<bool> seen(n, false);
    std::deque<int> queue{base};
    seen[static_cast<std::size_t>(base)] = true;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int t : out[static_cast<std::size_t>(v)]) {
        if (t != SubgroupGraph::kNone && !seen[static_cast<std::size_t>(t)]) {
          seen[static_cast<std::size_t>(t)] = true;
          queue.push_back(t);
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) alive[v] = alive[v] && seen[v];
    // Trim hanging trees: repeatedly drop non-base vertices of degree <= 1.
    auto degree = [&](std::size_t v) {
      int d = 0;
      for (int t : out[v]) d += (t != SubgroupGraph::kNone);
      return d;
    };
    std::vector<int> stack;
    for (std::size_t v = 0; v < n; ++v) {
      if (alive[v] && static_cast<int>(v) != base && degree(v) <= 1) stack.push_back(static_cast<int>(v));
    }
    while (!stack.empty()) {
      auto v = static_cast<std::size_t>(stack.back());
      stack.pop_back();
      if (!alive[v]) continue;
      alive[v] = false;
      for (std::size_t l = 0; l < kAlphabetSize; ++l) {
        int t = out[v][l];
        if (t == SubgroupGraph::kNone) continue;
        auto tu = static_cast<std::size_t>(t);
        out[tu][l ^ 1U] = SubgroupGraph::kNone;
        out[v][l] = SubgroupGraph::kNone;
        if (alive[tu] && t != base && degree(tu) <= 1) stack.push_back(t);
      }
    }
    return canonical(out, base);
  }

  // Relabels states in breadth-first order from `base` with letter order
  // x, x^-1, h, h^-1.
  static std::vector<SubgroupGraph::Row> canonical(const std::vector<SubgroupGraph::Row>& table,
                                                   int base) {
    std::vector<int> label(table.size(), SubgroupGraph::kNone);
    std::vector<int> order{base};
    label[static_cast<std::size_t>(base)] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int t : table[static_cast<std::size_t>(order[i])]) {
        if (t != SubgroupGraph::kNone && label[static_cast<std::size_t>(t)] == SubgroupGraph::kNone) {
          label[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
          order.push_back(t);
        }
      }
    }
    std::vector<SubgroupGraph::Row> result(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t l = 0; l < kAlphabetSize; ++l) {
        int t = table[static_cast<std::size_t>(order[i])][l];
        result[i][l] = t == SubgroupGraph::kNone ? SubgroupGraph::kNone : label[static_cast<std::size_t>(t)];
      }
    }
    return result;
  }

 private:
  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    for (std::size_t l = 0; l < kAlphabetSize; ++l) {
      auto& src = adj_[static_cast<std::size_t>(b)][l];
      auto& dst = adj_[static_cast<std::size_t>(a)][l];
      dst.insert(dst.end(), src.begin(), src.end());
      src.clear();
    }
  }

  std::vector<int> parent_;
  std::vector<std::array<std::vector<int>, kAlphabetSize>> adj_;
};

}  // namespace

SubgroupGraph::SubgroupGraph() : SubgroupGraph(std::vector<Row>{Row{kNone, kNone, kNone, kNone}}) {}

SubgroupGraph::SubgroupGraph(std::vector<Row> canonical_table) : table_(std::move(canonical_table)) {
  finish();
}

void SubgroupGraph::finish() {
  complete_ = true;
  for (const auto& r : table_) {
    for (int t : r) complete_ = complete_ && t != kNone;
  }
  transversal_.assign(table_.size(), FreeWord());
  std::vector<bool> seen(table_.size(), false);
  seen[0] = true;
  std::vector<int> order{0};
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto s = static_cast<std::size_t>(order[i]);
    for (Letter l = 0; l < kAlphabetSize; ++l) {
      int t = table_[s][l];
      if (t != kNone && !seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        const Letter one[1] = {l};
        transversal_[static_cast<std::size_t>(t)] = transversal_[s] * FreeWord::from_letters(one);
        order.push_back(t);
      }
    }
  }
}

SubgroupGraph SubgroupGraph::from_edges(int state_count, int basepoint,
                                        const std::vector<RawEdge>& edges) {
  if (state_count < 1 || basepoint < 0 || basepoint >= state_count) {
    throw InvalidArgument("graph needs a basepoint among its states");
  }
  Folder folder(state_count);
  for (const auto& e : edges) {
    if (e.source < 0 || e.source >= state_count || e.target < 0 || e.target >= state_count ||
        e.generator < 0 || e.generator >= kRank) {
      throw InvalidArgument("edge references an unknown state or generator");
    }
    folder.add_edge(e.source, e.generator, e.target);
  }
  folder.fold();
  return SubgroupGraph(folder.core_table(basepoint));
}

std::optional<int> SubgroupGraph::trace(int state, const FreeWord& w) const {
  for (Letter l : w.letters()) {
    state = table_[static_cast<std::size_t>(state)][l];
    if (state == kNone) return std::nullopt;
  }
  return state;
}

std::size_t SubgroupGraph::rank() const {
  std::size_t edges = 0;
  for (const auto& r : table_) edges += (r[kX] != kNone) + (r[kH] != kNone);
  return edges + 1 - table_.size();
}

SubgroupGraph graph_from_generators(const std::vector<FreeWord>& gens) {
  // Petal graph: one loop at the basepoint per generator.
  int n = 1;
  for (const auto& g : gens) n += g.length() > 1 ? static_cast<int>(g.length()) - 1 : 0;
  std::vector<SubgroupGraph::RawEdge> edges;
  int next = 1;
  for (const auto& g : gens) {
    const auto& letters = g.letters();
    int current = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      int target = (i + 1 == letters.size()) ? 0 : next++;
      Letter l = letters[i];
      if (letter_sign(l) > 0) {
        edges.push_back({current, letter_generator(l), target});
      } else {
        edges.push_back({target, letter_generator(l), current});
      }
      current = target;
    }
  }
  return SubgroupGraph::from_edges(n, 0, edges);
}

SubgroupGraph kernel_graph(const CyclicHom& f) {
  if (!f.surjective()) throw InvalidArgument("kernel has index < n in image subgroup");
  const auto n = static_cast<int>(f.modulus);
  std::vector<SubgroupGraph::RawEdge> edges;
  for (int s = 0; s < n; ++s) {
    edges.push_back({s, 0, static_cast<int>((s + f.image_x) % n)});
    edges.push_back({s, 1, static_cast<int>((s + f.image_h) % n)});
  }
  return SubgroupGraph::from_edges(n, 0, edges);
}

bool membership(const SubgroupGraph& g, const FreeWord& w) {
  auto end = g.trace(0, w);
  return end.has_value() && *end == 0;
}

std::optional<std::size_t> index(const SubgroupGraph& g) {
  if (!g.complete()) return std::nullopt;
  return g.state_count();
}

SubgroupGraph intersect(const SubgroupGraph& g1, const SubgroupGraph& g2) {
  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> states{{0, 0}};
  id[{0, 0}] = 0;
  std::vector<SubgroupGraph::RawEdge> edges;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [a, b] = states[i];
    for (int gen = 0; gen < kRank; ++gen) {
      int ta = g1.target(a, make_letter(gen, 1));
      int tb = g2.target(b, make_letter(gen, 1));
      if (ta == SubgroupGraph::kNone || tb == SubgroupGraph::kNone) continue;
      auto [it, fresh] = id.try_emplace({ta, tb}, static_cast<int>(states.size()));
      if (fresh) states.emplace_back(ta, tb);
      edges.push_back({static_cast<int>(i), gen, it->second});
    }
    for (int gen = 0; gen < kRank; ++gen) {
      int ta = g1.target(a, make_letter(gen, -1));
      int tb = g2.target(b, make_letter(gen, -1));
      if (ta == SubgroupGraph::kNone || tb == SubgroupGraph::kNone) continue;
      auto [it, fresh] = id.try_emplace({ta, tb}, static_cast<int>(states.size()));
      if (fresh) states.emplace_back(ta, tb);
      edges.push_back({it->second, gen, static_cast<int>(i)});
    }
  }
  return SubgroupGraph::from_edges(static_cast<int>(states.size()), 0, edges);
}

std::vector<int> coset_action(const SubgroupGraph& g, const FreeWord& w) {
  if (!g.complete()) throw InfiniteIndex();
  std::vector<int> perm(g.state_count());
  for (std::size_t s = 0; s < perm.size(); ++s) perm[s] = *g.trace(static_cast<int>(s), w);
  return perm;
}

std::vector<std::vector<int>> orbits(const SubgroupGraph& g, const std::vector<FreeWord>& gens) {
  if (!g.complete()) throw InfiniteIndex();
  const std::size_t n = g.state_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
    return v;
  };
  for (const auto& w : gens) {
    auto perm = coset_action(g, w);
    for (std::size_t s = 0; s < n; ++s) {
      int a = find(static_cast<int>(s));
      int b = find(perm[s]);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::vector<std::vector<int>> result;
  std::vector<int> slot(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    auto r = static_cast<std::size_t>(find(static_cast<int>(s)));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(result.size());
      result.emplace_back();
    }
    result[static_cast<std::size_t>(slot[r])].push_back(static_cast<int>(s));
  }
  return result;
}

std::vector<std::size_t> orbit_decomposition(const SubgroupGraph& g,
                                             const std::vector<FreeWord>& gens) {
  std::vector<std::size_t> sizes;
  for (const auto& o : orbits(g, gens)) sizes.push_back(o.size());
  return sizes;
}

SchreierData schreier_basis(const SubgroupGraph& g) {
  SchreierData out;
  out.transversal = g.transversal();
  const std::size_t n = g.state_count();
  // Tree edges are those that first discovered a state in the BFS.
  std::vector<std::array<bool, kRank>> tree(n, {false, false});
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::vector<int> order{0};
  for (std::size_t i = 0; i < order.size(); ++i) {
    int s = order[i];
    for (Letter l = 0; l < kAlphabetSize; ++l) {
      int t = g.target(s, l);
      if (t == SubgroupGraph::kNone || seen[static_cast<std::size_t>(t)]) continue;
      seen[static_cast<std::size_t>(t)] = true;
      order.push_back(t);
      int src = letter_sign(l) > 0 ? s : t;
      tree[static_cast<std::size_t>(src)][static_cast<std::size_t>(letter_generator(l))] = true;
    }
  }
  out.edge_index.assign(n, {SubgroupGraph::kNone, SubgroupGraph::kNone});
  for (std::size_t s = 0; s < n; ++s) {
    for (int gen = 0; gen < kRank; ++gen) {
      int t = g.target(static_cast<int>(s), make_letter(gen, 1));
      if (t == SubgroupGraph::kNone || tree[s][static_cast<std::size_t>(gen)]) continue;
      out.edge_index[s][static_cast<std::size_t>(gen)] = static_cast<int>(out.basis.size());
      const Letter one[1] = {make_letter(gen, 1)};
      out.basis.push_back(out.transversal[s] * FreeWord::from_letters(one) *
                          out.transversal[static_cast<std::size_t>(t)].inverse());
    }
  }
  return out;
}

std::vector<long long> rewrite_abelian(const SubgroupGraph& g, const SchreierData& s,
                                       const FreeWord& w) {
  std::vector<long long> v(s.basis.size(), 0);
  int state = 0;
  for (Letter l : w.letters()) {
    int t = g.target(state, l);
    if (t == SubgroupGraph::kNone) throw InvalidArgument("word " + w.str() + " is not in the subgroup");
    const int gen = letter_generator(l);
    const int src = letter_sign(l) > 0 ? state : t;
    const int idx = s.edge_index[static_cast<std::size_t>(src)][static_cast<std::size_t>(gen)];
    if (idx != SubgroupGraph::kNone) v[static_cast<std::size_t>(idx)] += letter_sign(l);
    state = t;
  }
  if (state != 0) throw InvalidArgument("word " + w.str() + " is not in the subgroup");
  return v;
}

long long inner_image(const SubgroupGraph& g, const SchreierData& s, const InnerHom& f,
                      const FreeWord& w) {
  auto v = rewrite_abelian(g, s, w);
  long long r = 0;
  for (std::size_t i = 0; i < v.size(); ++i) r = mod_floor(r + v[i] * f.values[i], f.modulus);
  return r;
}

SubgroupGraph coset_extension(const SubgroupGraph& outer, const InnerHom& inner) {
  if (!outer.complete()) throw InfiniteIndex();
  if (inner.modulus < 1) throw InvalidArgument("inner modulus must be positive");
  const SchreierData s = schreier_basis(outer);
  if (inner.values.size() != s.basis.size()) {
    throw InvalidArgument("inner homomorphism is not defined on all " +
                          std::to_string(s.basis.size()) + " Schreier generators");
  }
  const auto m = inner.modulus;
  const auto d = static_cast<long long>(outer.state_count());
  auto id = [m](long long state, long long r) { return static_cast<int>(state * m + r); };
  std::vector<SubgroupGraph::RawEdge> edges;
  for (long long st = 0; st < d; ++st) {
    for (int gen = 0; gen < kRank; ++gen) {
      int t = outer.target(static_cast<int>(st), make_letter(gen, 1));
      int idx = s.edge_index[static_cast<std::size_t>(st)][static_cast<std::size_t>(gen)];
      long long shift = idx == SubgroupGraph::kNone ? 0 : inner.values[static_cast<std::size_t>(idx)];
      for (long long r = 0; r < m; ++r) {
        edges.push_back({id(st, r), gen, id(t, mod_floor(r + shift, m))});
      }
    }
  }
  return SubgroupGraph::from_edges(static_cast<int>(d * m), 0, edges);
}

FreeWord coset_reduce(const SubgroupGraph& g, const FreeWord& w) {
  int state = 0;
  std::size_t consumed = 0;
  const auto& letters = w.letters();
  while (consumed < letters.size()) {
    int t = g.target(state, letters[consumed]);
    if (t == SubgroupGraph::kNone) break;
    state = t;
    ++consumed;
  }
  std::vector<Letter> tail(letters.begin() + static_cast<std::ptrdiff_t>(consumed), letters.end());
  return g.transversal()[static_cast<std::size_t>(state)] * FreeWord::from_letters(tail);
}

}  // namespace tetrus
