#pragma once

#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "tetrus/error.hpp"

namespace tetrus::surface {

// Angles are measured in turns (1 turn = 2*pi) and kept exact.
using Turns = boost::rational<long long>;

// Reduces an angle into [0, 1).
Turns wrap(Turns t);

enum class ChartKind { phi, psi };

// Parametrization of one of the two annuli A_{p/q} (phi) or B_{p/q} (psi)
// covering the boundary of the Seifert-fibered solid torus V_{p/q}. The model
// annulus has coordinates (x, y) in [0,1]^2 with y periodic.
struct AnnulusChart {
  long long p = 1;
  long long q = 1;
  long long a = 1;  // Bezout pair: a p + b q = 1
  long long b = 0;
  ChartKind which = ChartKind::phi;

  static AnnulusChart phi(long long p, long long q, long long a, long long b);
  static AnnulusChart psi(long long p, long long q, long long a, long long b);
};

// A point of the torus |z| = |w| = 1 written as angles of z and w.
struct TorusPoint {
  Turns z;
  Turns w;
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

// phi(x, y) = (e^{2 pi i ((1-2x)/4q + p y)}, e^{2 pi i q y})
// psi(x, y) = (e^{2 pi i ((2x+1)/4q + p (y - a/2q))}, e^{2 pi i q (y - a/2q)})
TorusPoint chart_point(const AnnulusChart& c, Turns x, Turns y);

// Complex conjugation on the torus.
TorusPoint conjugate(const TorusPoint& t);

// One boundary arc of a meridian disk D^2 x {eta}: the image of a horizontal
// segment I x {height} of the chart. `start`/`end` are the ccw endpoints and
// `x_at_start` says which end of the segment sits at `start`.
struct DiskArc {
  Turns start;
  Turns end;
  ChartKind chart;
  Turns height;
  int x_at_start;  // 0 or 1
};

// The boundary arcs of D^2 x {eta} in V_{p/q} cut out by the two charts,
// sorted by start angle. Verifies they tile the circle without overlap.
std::vector<DiskArc> disk_boundary(const AnnulusChart& phi, const AnnulusChart& psi, Turns eta);

// The meridian disks of one solid torus that belong to the leaf, and where
// each lies along the fibre direction.
struct LeafFace {
  std::string name;
  int torus;   // 0 for V_{1/3} (hexagons), 1 for V_{1/2} (squares)
  Turns eta;   // w-angle of the disk
  std::vector<DiskArc> arcs;
  std::vector<int> labeled_arcs;  // indices of arcs glued across the tori
};

// Output of the gluing derivation: the faces of the leaf through D^2 x {1}
// in V_{1/3}, and the identification of labelled arcs.
struct GluingTable {
  struct Pair {
    Turns label;
    int face_a, arc_a;  // hexagon side (psi_{1/3} arc)
    int face_b, arc_b;  // square side (phi_{1/2} arc)
    bool orientation_reversing;
  };
  AnnulusChart phi3, psi3, phi2, psi2;
  std::vector<LeafFace> faces;  // hexagons by name, then squares by name
  std::vector<Pair> pairs;      // sorted by label
  std::vector<Turns> labels;    // sorted
};

// Computes the leaf through D^2 x {1} in V_{1/3} by transporting labelled
// arcs across phi_{1/2} psi_{1/3}^{-1}. The Bezout pairs select the psi charts
// of the two solid tori; any pair with a p + b q = 1 is admissible.
GluingTable derive_gluing(long long a3 = 1, long long b3 = 0, long long a2 = 1, long long b2 = 0);

std::string format_turns(Turns t);

}  // namespace tetrus::surface
