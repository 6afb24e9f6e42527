#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tetrus/surface/complex.hpp"

namespace tetrus::surface {

// A straight arc inside one polygon between two side points, oriented from
// `from` to `to`.
struct Chord {
  int polygon = 0;
  int from_edge = 0;
  Turns from_pos;
  int to_edge = 0;
  Turns to_pos;
  friend bool operator==(const Chord&, const Chord&) = default;

  EdgePoint from() const { return {polygon, from_edge, from_pos}; }
  EdgePoint to() const { return {polygon, to_edge, to_pos}; }
  Chord reversed() const { return {polygon, to_edge, to_pos, from_edge, from_pos}; }
};

// An oriented closed curve: the exit of each chord is glued to the entry of
// the next, cyclically.
struct Curve {
  std::vector<Chord> chords;
  friend bool operator==(const Curve&, const Curve&) = default;
  Curve reversed() const;
};

// Several curves with optional heights in the fibre direction.
struct CurveSystem {
  std::vector<Curve> curves;
  std::vector<Turns> heights;
};

// Throws InvariantViolation naming the problem if the chords do not close up,
// leave the polygon sides, or the curve meets itself.
void validate_curve(const PolygonComplex& c, const Curve& curve);
bool is_simple(const PolygonComplex& c, const Curve& curve);

// Orientation-free identity of a curve: the sorted set of unordered chords.
using ChordKey = std::tuple<int, int, Turns, int, Turns>;
std::vector<ChordKey> curve_key(const Curve& curve);
bool same_curve_setwise(const Curve& a, const Curve& b);

Curve apply_map(const CombinatorialMap& f, const Curve& curve);

// Boundary coordinate of a side point, in [0, polygon size).
Turns boundary_coordinate(const EdgePoint& p);

// Crossing of two chords of a polygon with `sides` sides: 0 if disjoint,
// otherwise the sign, +1 when the second chord starts on the right of the
// first (in the open ccw arc from the first chord's start to its end).
// Throws on a shared endpoint.
int chord_crossing(const Chord& a, const Chord& b, std::size_t sides);

struct IntersectionNumbers {
  long long geometric = 0;
  long long algebraic = 0;
  friend bool operator==(const IntersectionNumbers&, const IntersectionNumbers&) = default;
};

// Transverse crossings between two curves, with signs from the polygon
// orientation. Curves must not share a point; throws otherwise.
IntersectionNumbers intersection_numbers(const PolygonComplex& c, const Curve& a, const Curve& b);

// Plain-text serialization of a complex and curves: one line per polygon side
// and per chord, for external plotting.
std::string export_edge_list(const PolygonComplex& c, const std::vector<Curve>& curves);

std::string describe(const PolygonComplex& c, const Curve& curve);

}  // namespace tetrus::surface
