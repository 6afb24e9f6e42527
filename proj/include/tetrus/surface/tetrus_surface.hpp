#pragma once

#include <string>
#include <vector>

#include "tetrus/surface/chart.hpp"
#include "tetrus/surface/complex.hpp"
#include "tetrus/surface/curves.hpp"

// The fibre surface of the double branched cover of the ball over the
// Montesinos tangle T(1/3, 1/2): two hexagons from V_{1/3} and three squares
// from V_{1/2}, and everything built on it.
namespace tetrus::surface {

// Polygons in the order of the gluing table's faces; labelled sides glued by
// the table, other sides free.
PolygonComplex build_F(const GluingTable& table);

// Time along the Seifert fibres from a leaf to the next one, the same for
// every disk of the leaf.
Turns return_time(const GluingTable& table);

// First-return map of F along the fibres. Throws if the flow does not carry
// sides to sides with labels shifted by the return time.
CombinatorialMap monodromy_map(const GluingTable& table, const PolygonComplex& f);

// One arc of the fixed set of complex conjugation, flowed back to F.
struct BranchArc {
  int torus;            // 0 for V_{1/3}, 1 for V_{1/2}
  Turns w;              // 0 for w = 1, 1/2 for w = -1
  int face;             // polygon of F containing the arc after flowing
  Turns height;         // fraction of the return time spent flowing back
  Chord chord;          // from angle 0 to angle 1/2, flowed
};
std::vector<BranchArc> branch_arcs(const GluingTable& table, const PolygonComplex& f);

// Closed branch curves on DF: arcs at the same height chained through glued
// sides and doubled through the mirror copy. Heights are in units of the
// return time.
CurveSystem branch_curves(const GluingTable& table, const PolygonComplex& f, const PolygonComplex& df);

// The twelve link components of the trivially fibred cover and their
// projections to DF.
struct LinkComponent {
  Turns height;           // in [0, 1) along the circle factor
  int base_curve;         // index into the base system
  int power;              // the projection is (D sigma)^power of the base curve
  int projected;          // index into LinkLift::projected
};
struct LinkLift {
  std::vector<LinkComponent> components;  // sorted by height
  std::vector<Curve> projected;           // setwise-distinct projections
};
LinkLift lift_link_curves(const PolygonComplex& df, const CombinatorialMap& d_sigma, const CurveSystem& base);

// Everything above from one Bezout choice.
struct FiberSurface {
  GluingTable gluing;
  PolygonComplex f;
  CombinatorialMap sigma;
  PolygonComplex df;
  CombinatorialMap d_sigma;
  CombinatorialMap involution;
  CurveSystem branch;
  LinkLift link;
};
FiberSurface build_fiber_surface(long long a3 = 1, long long b3 = 0);

// True iff the two complexes agree after relabelling polygons and rotating
// sides, with gluings (and free sides) matching.
bool isomorphic(const PolygonComplex& a, const PolygonComplex& b);

}  // namespace tetrus::surface
