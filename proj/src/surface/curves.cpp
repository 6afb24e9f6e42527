#include "tetrus/surface/curves.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tetrus::surface {

namespace {

std::tuple<int, int, Turns> point_key(const PolygonComplex& c, const EdgePoint& p) {
  EdgePoint k = c.canonical(p);
  return {k.polygon, k.edge, k.pos};
}

// True iff x lies strictly inside the ccw arc from a to b on a circle of
// circumference n.
bool strictly_between(Turns a, Turns b, Turns x, Turns n) {
  auto fwd = [&](Turns from, Turns to) {
    Turns d = to - from;
    while (d < 0) d += n;
    while (d >= n) d -= n;
    return d;
  };
  const Turns span = fwd(a, b);
  const Turns off = fwd(a, x);
  return off > 0 && off < span;
}

}  // namespace

Curve Curve::reversed() const {
  Curve out;
  for (auto it = chords.rbegin(); it != chords.rend(); ++it) out.chords.push_back(it->reversed());
  return out;
}

Turns boundary_coordinate(const EdgePoint& p) { return Turns(p.edge) + p.pos; }

void validate_curve(const PolygonComplex& c, const Curve& curve) {
  if (curve.chords.empty()) throw InvariantViolation("curve has no chords");
  for (std::size_t i = 0; i < curve.chords.size(); ++i) {
    const Chord& ch = curve.chords[i];
    if (ch.polygon < 0 || static_cast<std::size_t>(ch.polygon) >= c.face_count()) {
      throw InvariantViolation("chord in a missing polygon");
    }
    const int m = static_cast<int>(c.polygon(ch.polygon).size());
    for (const EdgePoint& p : {ch.from(), ch.to()}) {
      if (p.edge < 0 || p.edge >= m || p.pos <= 0 || p.pos >= 1) {
        throw InvariantViolation("chord endpoint off the polygon sides");
      }
    }
    if (ch.from() == ch.to()) throw InvariantViolation("degenerate chord");
    const Chord& next = curve.chords[(i + 1) % curve.chords.size()];
    EdgePoint exit = c.opposite(ch.to());
    if (exit == ch.to() || exit != next.from()) {
      throw InvariantViolation("chords " + std::to_string(i) + " and " +
                               std::to_string((i + 1) % curve.chords.size()) + " do not join across a glued side");
    }
  }
  if (!is_simple(c, curve)) throw InvariantViolation("curve is not simple");
}

bool is_simple(const PolygonComplex& c, const Curve& curve) {
  std::set<std::tuple<int, int, Turns>> points;
  for (const auto& ch : curve.chords) {
    // Each crossing point of a side is visited by exactly two chord ends
    // (one on each side); count the exits only.
    if (!points.insert(point_key(c, ch.to())).second) return false;
  }
  for (std::size_t i = 0; i < curve.chords.size(); ++i) {
    for (std::size_t j = i + 1; j < curve.chords.size(); ++j) {
      const Chord& a = curve.chords[i];
      const Chord& b = curve.chords[j];
      if (a.polygon != b.polygon) continue;
      if (a.from() == b.from() || a.from() == b.to() || a.to() == b.from() || a.to() == b.to()) return false;
      if (chord_crossing(a, b, c.polygon(a.polygon).size()) != 0) return false;
    }
  }
  return true;
}

std::vector<ChordKey> curve_key(const Curve& curve) {
  std::vector<ChordKey> key;
  for (const auto& ch : curve.chords) {
    auto a = std::make_pair(ch.from_edge, ch.from_pos);
    auto b = std::make_pair(ch.to_edge, ch.to_pos);
    if (b < a) std::swap(a, b);
    key.emplace_back(ch.polygon, a.first, a.second, b.first, b.second);
  }
  std::sort(key.begin(), key.end());
  return key;
}

bool same_curve_setwise(const Curve& a, const Curve& b) { return curve_key(a) == curve_key(b); }

Curve apply_map(const CombinatorialMap& f, const Curve& curve) {
  Curve out;
  for (const auto& ch : curve.chords) {
    EdgePoint a = f.apply(ch.from());
    EdgePoint b = f.apply(ch.to());
    out.chords.push_back({a.polygon, a.edge, a.pos, b.edge, b.pos});
  }
  return out;
}

int chord_crossing(const Chord& a, const Chord& b, std::size_t sides) {
  if (a.polygon != b.polygon) return 0;
  const Turns n(static_cast<long long>(sides));
  const Turns pa = boundary_coordinate(a.from()), qa = boundary_coordinate(a.to());
  const Turns pb = boundary_coordinate(b.from()), qb = boundary_coordinate(b.to());
  if (pa == pb || pa == qb || qa == pb || qa == qb) throw InvariantViolation("chords share an endpoint");
  const bool s = strictly_between(pa, qa, pb, n);
  const bool t = strictly_between(pa, qa, qb, n);
  if (s == t) return 0;
  return s ? 1 : -1;
}

IntersectionNumbers intersection_numbers(const PolygonComplex& c, const Curve& a, const Curve& b) {
  std::set<std::tuple<int, int, Turns>> points;
  for (const auto& ch : a.chords) points.insert(point_key(c, ch.to()));
  for (const auto& ch : b.chords) {
    if (points.count(point_key(c, ch.to()))) throw InvariantViolation("curves share a point on a side");
  }
  IntersectionNumbers out;
  for (const auto& x : a.chords) {
    for (const auto& y : b.chords) {
      if (x.polygon != y.polygon) continue;
      const int sign = chord_crossing(x, y, c.polygon(x.polygon).size());
      out.geometric += sign != 0;
      out.algebraic += sign;
    }
  }
  return out;
}

std::string describe(const PolygonComplex& c, const Curve& curve) {
  std::ostringstream os;
  for (std::size_t i = 0; i < curve.chords.size(); ++i) {
    const auto& ch = curve.chords[i];
    if (i) os << " -> ";
    os << c.polygon(ch.polygon).name << '[' << ch.from_edge << '@' << format_turns(ch.from_pos) << ','
       << ch.to_edge << '@' << format_turns(ch.to_pos) << ']';
  }
  return os.str();
}

std::string export_edge_list(const PolygonComplex& c, const std::vector<Curve>& curves) {
  std::ostringstream os;
  os << "# polygon side partner_polygon partner_side label\n";
  for (std::size_t p = 0; p < c.face_count(); ++p) {
    const auto& poly = c.polygons()[p];
    for (std::size_t e = 0; e < poly.size(); ++e) {
      const auto& edge = poly.edges[e];
      os << "side " << poly.name << ' ' << e << ' ';
      if (edge.partner) {
        os << c.polygon(edge.partner->polygon).name << ' ' << edge.partner->edge;
      } else {
        os << "- -";
      }
      os << ' ' << (edge.label ? format_turns(*edge.label) : "-") << '\n';
    }
  }
  os << "# curve polygon from_side from_pos to_side to_pos\n";
  for (std::size_t k = 0; k < curves.size(); ++k) {
    for (const auto& ch : curves[k].chords) {
      os << "chord " << k << ' ' << c.polygon(ch.polygon).name << ' ' << ch.from_edge << ' '
         << format_turns(ch.from_pos) << ' ' << ch.to_edge << ' ' << format_turns(ch.to_pos) << '\n';
    }
  }
  return os.str();
}

}  // namespace tetrus::surface
