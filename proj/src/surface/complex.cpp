#include "tetrus/surface/complex.hpp"

#include <algorithm>
#include <numeric>

#include "tetrus/euler.hpp"

namespace tetrus::surface {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<std::size_t> corner_offsets(const PolygonComplex& c) {
  std::vector<std::size_t> off{0};
  for (const auto& p : c.polygons()) off.push_back(off.back() + p.size());
  return off;
}

}  // namespace

PolygonComplex::PolygonComplex(std::vector<Polygon> polygons) : polygons_(std::move(polygons)) {
  for (std::size_t p = 0; p < polygons_.size(); ++p) {
    if (polygons_[p].edges.empty()) throw InvalidArgument("polygon " + polygons_[p].name + " has no sides");
    for (std::size_t e = 0; e < polygons_[p].size(); ++e) {
      const auto& edge = polygons_[p].edges[e];
      if (!edge.partner) continue;
      const EdgeRef self{static_cast<int>(p), static_cast<int>(e)};
      const EdgeRef other = *edge.partner;
      if (other.polygon < 0 || static_cast<std::size_t>(other.polygon) >= polygons_.size() ||
          other.edge < 0 || static_cast<std::size_t>(other.edge) >= polygons_[static_cast<std::size_t>(other.polygon)].size()) {
        throw InvalidArgument("gluing references a missing side");
      }
      if (other == self) throw InvariantViolation("side glued to itself");
      const auto& back = polygons_[static_cast<std::size_t>(other.polygon)].edges[static_cast<std::size_t>(other.edge)];
      if (!back.partner || *back.partner != self) throw InvariantViolation("gluing is not an involution");
      if (!edge.orientation_reversing) {
        throw InvariantViolation("side " + polygons_[p].name + "/" + std::to_string(e) +
                                 " is glued orientation-preservingly");
      }
    }
  }
}

std::size_t PolygonComplex::edge_count() const {
  std::size_t sides = 0;
  for (const auto& p : polygons_) sides += p.size();
  return sides - (sides - free_edge_count()) / 2;
}

std::size_t PolygonComplex::free_edge_count() const {
  std::size_t n = 0;
  for (const auto& p : polygons_) {
    for (const auto& e : p.edges) n += !e.partner.has_value();
  }
  return n;
}

std::optional<EdgeRef> PolygonComplex::partner(EdgeRef e) const {
  return polygons_.at(static_cast<std::size_t>(e.polygon)).edges.at(static_cast<std::size_t>(e.edge)).partner;
}

std::vector<std::vector<int>> PolygonComplex::vertex_classes() const {
  const auto off = corner_offsets(*this);
  UnionFind uf(off.back());
  for (std::size_t p = 0; p < polygons_.size(); ++p) {
    const std::size_t n = polygons_[p].size();
    for (std::size_t e = 0; e < n; ++e) {
      const auto& partner = polygons_[p].edges[e].partner;
      if (!partner) continue;
      const auto q = static_cast<std::size_t>(partner->polygon);
      const auto f = static_cast<std::size_t>(partner->edge);
      const std::size_t m = polygons_[q].size();
      // Reversing identification: start of e meets end of f and vice versa.
      uf.unite(off[p] + e, off[q] + (f + 1) % m);
      uf.unite(off[p] + (e + 1) % n, off[q] + f);
    }
  }
  std::vector<int> label(off.back(), -1);
  int next = 0;
  std::vector<std::vector<int>> out(polygons_.size());
  for (std::size_t p = 0; p < polygons_.size(); ++p) {
    for (std::size_t i = 0; i < polygons_[p].size(); ++i) {
      auto r = uf.find(off[p] + i);
      if (label[r] < 0) label[r] = next++;
      out[p].push_back(label[r]);
    }
  }
  return out;
}

std::size_t PolygonComplex::vertex_count() const {
  int most = -1;
  for (const auto& row : vertex_classes()) {
    for (int v : row) most = std::max(most, v);
  }
  return static_cast<std::size_t>(most + 1);
}

long long PolygonComplex::euler_characteristic() const {
  return static_cast<long long>(vertex_count()) - static_cast<long long>(edge_count()) +
         static_cast<long long>(face_count());
}

std::size_t PolygonComplex::boundary_components() const {
  // Free sides sharing a vertex lie on the same boundary circle.
  const auto vc = vertex_classes();
  std::vector<EdgeRef> free;
  for (std::size_t p = 0; p < polygons_.size(); ++p) {
    for (std::size_t e = 0; e < polygons_[p].size(); ++e) {
      if (!polygons_[p].edges[e].partner) free.push_back({static_cast<int>(p), static_cast<int>(e)});
    }
  }
  std::size_t vertices = vertex_count();
  UnionFind uf(free.size() + vertices);
  std::vector<int> ends(vertices, 0);
  for (std::size_t k = 0; k < free.size(); ++k) {
    const auto p = static_cast<std::size_t>(free[k].polygon);
    const auto e = static_cast<std::size_t>(free[k].edge);
    for (std::size_t corner : {e, (e + 1) % polygons_[p].size()}) {
      const auto v = static_cast<std::size_t>(vc[p][corner]);
      uf.unite(k, free.size() + v);
      ++ends[v];
    }
  }
  for (int count : ends) {
    if (count != 0 && count != 2) throw InvariantViolation("boundary vertex is not a manifold point");
  }
  std::vector<bool> root(free.size() + vertices, false);
  std::size_t circles = 0;
  for (std::size_t k = 0; k < free.size(); ++k) {
    auto r = uf.find(k);
    if (!root[r]) {
      root[r] = true;
      ++circles;
    }
  }
  return circles;
}

bool PolygonComplex::connected() const {
  UnionFind uf(polygons_.size());
  for (std::size_t p = 0; p < polygons_.size(); ++p) {
    for (const auto& e : polygons_[p].edges) {
      if (e.partner) uf.unite(p, static_cast<std::size_t>(e.partner->polygon));
    }
  }
  for (std::size_t p = 1; p < polygons_.size(); ++p) {
    if (uf.find(p) != uf.find(0)) return false;
  }
  return true;
}

long long PolygonComplex::genus() const {
  if (!connected()) throw InvariantViolation("genus of a disconnected complex");
  return genus_from_chi(euler_characteristic(), static_cast<long long>(boundary_components()));
}

EdgePoint PolygonComplex::opposite(const EdgePoint& p) const {
  auto other = partner({p.polygon, p.edge});
  if (!other) return p;
  return {other->polygon, other->edge, 1 - p.pos};
}

EdgePoint PolygonComplex::canonical(const EdgePoint& p) const {
  EdgePoint o = opposite(p);
  if (std::tie(o.polygon, o.edge) < std::tie(p.polygon, p.edge)) return o;
  return p;
}

std::size_t vertex_count_by_rotation(const PolygonComplex& c) {
  // Corner (P, i) sits at the start of side i. Crossing side i lands at the
  // end of its partner f, which is the start of side f+1 in that polygon.
  const auto off = corner_offsets(c);
  const std::size_t total = off.back();
  std::vector<std::size_t> next(total, total);
  std::vector<bool> has_prev(total, false);
  for (std::size_t p = 0; p < c.face_count(); ++p) {
    for (std::size_t i = 0; i < c.polygons()[p].size(); ++i) {
      auto partner = c.polygons()[p].edges[i].partner;
      if (!partner) continue;
      const auto q = static_cast<std::size_t>(partner->polygon);
      const std::size_t m = c.polygons()[q].size();
      next[off[p] + i] = off[q] + (static_cast<std::size_t>(partner->edge) + 1) % m;
      has_prev[next[off[p] + i]] = true;
    }
  }
  std::vector<bool> seen(total, false);
  std::size_t count = 0;
  // Chains start at corners nobody rotates into (boundary vertices).
  for (std::size_t s = 0; s < total; ++s) {
    if (has_prev[s] || seen[s]) continue;
    ++count;
    for (std::size_t v = s; v != total && !seen[v]; v = next[v]) seen[v] = true;
  }
  for (std::size_t s = 0; s < total; ++s) {
    if (seen[s]) continue;
    ++count;
    for (std::size_t v = s; !seen[v]; v = next[v]) seen[v] = true;
  }
  return count;
}

CombinatorialMap::CombinatorialMap(std::vector<int> polygon_image, std::vector<std::vector<int>> edge_image,
                                   bool reverses)
    : polygon_image_(std::move(polygon_image)), edge_image_(std::move(edge_image)), reverses_(reverses) {
  if (polygon_image_.size() != edge_image_.size()) throw InvalidArgument("map tables disagree in size");
}

CombinatorialMap CombinatorialMap::identity(const PolygonComplex& c) {
  std::vector<int> pi(c.face_count());
  std::iota(pi.begin(), pi.end(), 0);
  std::vector<std::vector<int>> ei;
  for (const auto& p : c.polygons()) {
    ei.emplace_back(p.size());
    std::iota(ei.back().begin(), ei.back().end(), 0);
  }
  return CombinatorialMap(std::move(pi), std::move(ei), false);
}

EdgeRef CombinatorialMap::apply(EdgeRef e) const {
  const auto p = static_cast<std::size_t>(e.polygon);
  return {polygon_image_.at(p), edge_image_.at(p).at(static_cast<std::size_t>(e.edge))};
}

EdgePoint CombinatorialMap::apply(const EdgePoint& p) const {
  EdgeRef r = apply(EdgeRef{p.polygon, p.edge});
  return {r.polygon, r.edge, reverses_ ? 1 - p.pos : p.pos};
}

CombinatorialMap compose(const CombinatorialMap& outer, const CombinatorialMap& inner) {
  std::vector<int> pi(inner.polygon_image_.size());
  std::vector<std::vector<int>> ei(inner.edge_image_.size());
  for (std::size_t p = 0; p < pi.size(); ++p) {
    pi[p] = outer.polygon_image(inner.polygon_image_[p]);
    for (std::size_t e = 0; e < inner.edge_image_[p].size(); ++e) {
      ei[p].push_back(outer.apply(inner.apply(EdgeRef{static_cast<int>(p), static_cast<int>(e)})).edge);
    }
  }
  return CombinatorialMap(std::move(pi), std::move(ei), outer.reverses_ != inner.reverses_);
}

CombinatorialMap CombinatorialMap::power(int k) const {
  if (k < 0) throw InvalidArgument("negative map power");
  std::vector<std::vector<int>> ei;
  for (const auto& row : edge_image_) {
    ei.emplace_back(row.size());
    std::iota(ei.back().begin(), ei.back().end(), 0);
  }
  std::vector<int> pi(polygon_image_.size());
  std::iota(pi.begin(), pi.end(), 0);
  CombinatorialMap result(std::move(pi), std::move(ei), false);
  for (int i = 0; i < k; ++i) result = compose(*this, result);
  return result;
}

bool CombinatorialMap::is_automorphism(const PolygonComplex& c) const {
  const std::size_t n = c.face_count();
  if (polygon_image_.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (std::size_t p = 0; p < n; ++p) {
    const int q = polygon_image_[p];
    if (q < 0 || static_cast<std::size_t>(q) >= n || hit[static_cast<std::size_t>(q)]) return false;
    hit[static_cast<std::size_t>(q)] = true;
    const std::size_t m = c.polygons()[p].size();
    if (c.polygons()[static_cast<std::size_t>(q)].size() != m || edge_image_[p].size() != m) return false;
    // Consecutive sides stay consecutive, forwards or backwards.
    const int step = reverses_ ? -1 : 1;
    for (std::size_t e = 0; e < m; ++e) {
      const int expect = static_cast<int>((edge_image_[p][0] + step * static_cast<int>(e) + static_cast<int>(m) * 4) % static_cast<int>(m));
      if (edge_image_[p][e] != expect) return false;
    }
    for (std::size_t e = 0; e < m; ++e) {
      const EdgeRef self{static_cast<int>(p), static_cast<int>(e)};
      auto partner = c.partner(self);
      auto image_partner = c.partner(apply(self));
      if (partner.has_value() != image_partner.has_value()) return false;
      if (partner && apply(*partner) != *image_partner) return false;
    }
  }
  return true;
}

std::optional<int> CombinatorialMap::order(const PolygonComplex& c, int limit) const {
  const CombinatorialMap id = identity(c);
  CombinatorialMap current = *this;
  for (int k = 1; k <= limit; ++k) {
    if (current == id) return k;
    current = compose(*this, current);
  }
  return std::nullopt;
}

std::vector<EdgeRef> CombinatorialMap::fixed_edges(const PolygonComplex& c) const {
  std::vector<EdgeRef> out;
  for (std::size_t p = 0; p < c.face_count(); ++p) {
    for (std::size_t e = 0; e < c.polygons()[p].size(); ++e) {
      const EdgeRef self{static_cast<int>(p), static_cast<int>(e)};
      const EdgeRef img = apply(self);
      if (img == self || c.partner(self) == img) out.push_back(self);
    }
  }
  return out;
}

int mirror_polygon(const PolygonComplex& x, int p) {
  const int n = static_cast<int>(x.face_count());
  return p < n ? p + n : p - n;
}

PolygonComplex double_surface(const PolygonComplex& x) {
  if (x.closed()) throw InvalidArgument("nothing to double");
  const int n = static_cast<int>(x.face_count());
  std::vector<Polygon> out = x.polygons();
  for (int p = 0; p < n; ++p) {
    const auto& src = x.polygons()[static_cast<std::size_t>(p)];
    const int m = static_cast<int>(src.size());
    Polygon mirror{src.name + "'", {}};
    for (int i = m - 1; i >= 0; --i) {
      PolygonEdge e = src.edges[static_cast<std::size_t>(i)];
      std::swap(e.theta_start, e.theta_end);
      if (e.partner) {
        const int pm = static_cast<int>(x.polygons()[static_cast<std::size_t>(e.partner->polygon)].size());
        e.partner = EdgeRef{e.partner->polygon + n, pm - 1 - e.partner->edge};
      } else {
        e.partner = EdgeRef{p, i};
        out[static_cast<std::size_t>(p)].edges[static_cast<std::size_t>(i)].partner = EdgeRef{p + n, m - 1 - i};
      }
      mirror.edges.push_back(e);
    }
    out.push_back(std::move(mirror));
  }
  return PolygonComplex(std::move(out));
}

CombinatorialMap doubling_involution(const PolygonComplex& doubled) {
  const int total = static_cast<int>(doubled.face_count());
  if (total % 2 != 0) throw InvalidArgument("not a doubled complex");
  const int n = total / 2;
  std::vector<int> pi;
  std::vector<std::vector<int>> ei;
  for (int p = 0; p < total; ++p) {
    pi.push_back(p < n ? p + n : p - n);
    const int m = static_cast<int>(doubled.polygons()[static_cast<std::size_t>(p)].size());
    ei.emplace_back();
    for (int e = 0; e < m; ++e) ei.back().push_back(m - 1 - e);
  }
  return CombinatorialMap(std::move(pi), std::move(ei), true);
}

CombinatorialMap double_map(const PolygonComplex& x, const CombinatorialMap& f) {
  if (f.reverses_orientation()) throw InvalidArgument("only orientation-preserving maps extend to the double");
  const int n = static_cast<int>(x.face_count());
  std::vector<int> pi(static_cast<std::size_t>(2 * n));
  std::vector<std::vector<int>> ei(static_cast<std::size_t>(2 * n));
  for (int p = 0; p < n; ++p) {
    const int m = static_cast<int>(x.polygons()[static_cast<std::size_t>(p)].size());
    const int q = f.polygon_image(p);
    pi[static_cast<std::size_t>(p)] = q;
    pi[static_cast<std::size_t>(p + n)] = q + n;
    ei[static_cast<std::size_t>(p)].resize(static_cast<std::size_t>(m));
    ei[static_cast<std::size_t>(p + n)].resize(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e) {
      const int img = f.apply(EdgeRef{p, e}).edge;
      ei[static_cast<std::size_t>(p)][static_cast<std::size_t>(e)] = img;
      ei[static_cast<std::size_t>(p + n)][static_cast<std::size_t>(m - 1 - e)] = m - 1 - img;
    }
  }
  return CombinatorialMap(std::move(pi), std::move(ei), false);
}

}  // namespace tetrus::surface
