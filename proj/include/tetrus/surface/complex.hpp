#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "tetrus/surface/chart.hpp"

namespace tetrus::surface {

struct EdgeRef {
  int polygon = 0;
  int edge = 0;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

// A point on a polygon side; `pos` in (0,1) runs along the side in the
// polygon's ccw direction. On a glued side, (P, e, u) is the same surface
// point as (Q, f, 1 - u) where (Q, f) is the partner side.
struct EdgePoint {
  int polygon = 0;
  int edge = 0;
  Turns pos;
  friend bool operator==(const EdgePoint&, const EdgePoint&) = default;
};

struct PolygonEdge {
  std::optional<EdgeRef> partner;
  bool orientation_reversing = true;
  std::optional<Turns> label;
  Turns theta_start;  // boundary angle of the side's start on the meridian disk
  Turns theta_end;
};

struct Polygon {
  std::string name;
  std::vector<PolygonEdge> edges;  // in ccw order
  std::size_t size() const { return edges.size(); }
};

// Oriented polygons glued along sides. Construction validates that gluing is
// a fixed-point-free involution and that every identification reverses the
// ccw side orientation, so the result is an oriented surface.
class PolygonComplex {
 public:
  PolygonComplex() = default;
  explicit PolygonComplex(std::vector<Polygon> polygons);

  const std::vector<Polygon>& polygons() const { return polygons_; }
  const Polygon& polygon(int i) const { return polygons_.at(static_cast<std::size_t>(i)); }
  std::size_t face_count() const { return polygons_.size(); }
  std::size_t edge_count() const;
  std::size_t free_edge_count() const;
  std::optional<EdgeRef> partner(EdgeRef e) const;

  // Vertex classes of the polygon corners; corner (P, i) is the start of side i.
  // `vertex_of[P][i]` numbers the classes from 0.
  std::vector<std::vector<int>> vertex_classes() const;
  std::size_t vertex_count() const;
  long long euler_characteristic() const;
  std::size_t boundary_components() const;
  bool connected() const;
  bool closed() const { return free_edge_count() == 0; }
  long long genus() const;

  // The point on the other side of a glued edge, or the same point if free.
  EdgePoint opposite(const EdgePoint& p) const;
  // The representative of a surface point with the smaller edge reference.
  EdgePoint canonical(const EdgePoint& p) const;

 private:
  std::vector<Polygon> polygons_;
};

// Vertex count by walking around each vertex through the corner rotation,
// independent of vertex_classes(); used as a cross-check.
std::size_t vertex_count_by_rotation(const PolygonComplex& c);

// Polygon-wise map of a complex to itself. Polygon P goes to
// polygon_image[P] with side i going to side edge_image[P][i]; a
// side parameter u maps to u (orientation preserving) or 1 - u (reversing).
class CombinatorialMap {
 public:
  CombinatorialMap() = default;
  CombinatorialMap(std::vector<int> polygon_image, std::vector<std::vector<int>> edge_image, bool reverses);
  static CombinatorialMap identity(const PolygonComplex& c);

  int polygon_image(int p) const { return polygon_image_.at(static_cast<std::size_t>(p)); }
  EdgeRef apply(EdgeRef e) const;
  EdgePoint apply(const EdgePoint& p) const;
  bool reverses_orientation() const { return reverses_; }

  friend CombinatorialMap compose(const CombinatorialMap& outer, const CombinatorialMap& inner);
  CombinatorialMap power(int k) const;
  friend bool operator==(const CombinatorialMap&, const CombinatorialMap&) = default;

  // Checks that side adjacency is carried along: sides stay consecutive with
  // the right orientation and glued pairs map to glued pairs.
  bool is_automorphism(const PolygonComplex& c) const;
  // Smallest k >= 1 with power(k) == identity, searched up to `limit`.
  std::optional<int> order(const PolygonComplex& c, int limit = 64) const;
  // Sides with e and apply(e) equal or glued together.
  std::vector<EdgeRef> fixed_edges(const PolygonComplex& c) const;

 private:
  std::vector<int> polygon_image_;
  std::vector<std::vector<int>> edge_image_;
  bool reverses_ = false;
};

// D X: X together with a mirror copy whose polygons have reversed side order;
// free sides of X are glued to their mirror images. Mirror polygon of P is
// P + n with side i of P corresponding to side size-1-i.
PolygonComplex double_surface(const PolygonComplex& x);
CombinatorialMap doubling_involution(const PolygonComplex& doubled);
// Extends a map of X to the double, commuting with the doubling involution.
CombinatorialMap double_map(const PolygonComplex& x, const CombinatorialMap& f);
int mirror_polygon(const PolygonComplex& x, int p);

}  // namespace tetrus::surface
