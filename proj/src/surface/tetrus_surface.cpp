#include "tetrus/surface/tetrus_surface.hpp"

#include <algorithm>
#include <map>

namespace tetrus::surface {

namespace {

const AnnulusChart& phi_of(const GluingTable& t, int torus) { return torus == 0 ? t.phi3 : t.phi2; }

// Position of angle `theta` on a side spanning [start, end] ccw, or nullopt if
// theta is not strictly inside.
std::optional<Turns> side_position(const PolygonEdge& e, Turns theta) {
  const Turns len = wrap(e.theta_end - e.theta_start);
  const Turns off = wrap(theta - e.theta_start);
  if (off <= 0 || off >= len) return std::nullopt;
  return off / len;
}

EdgePoint point_at_angle(const PolygonComplex& f, int face, Turns theta) {
  const auto& poly = f.polygon(face);
  for (std::size_t e = 0; e < poly.size(); ++e) {
    if (auto u = side_position(poly.edges[e], theta)) return {face, static_cast<int>(e), *u};
  }
  throw InvariantViolation("angle " + format_turns(theta) + " lies on a corner of " + poly.name);
}

EdgePoint mirror_point(const PolygonComplex& f, const EdgePoint& p) {
  const int m = static_cast<int>(f.polygon(p.polygon).size());
  return {mirror_polygon(f, p.polygon), m - 1 - p.edge, 1 - p.pos};
}

}  // namespace

PolygonComplex build_F(const GluingTable& table) {
  std::vector<Polygon> polys;
  for (const auto& face : table.faces) {
    Polygon p{face.name, {}};
    for (const auto& arc : face.arcs) p.edges.push_back({std::nullopt, true, std::nullopt, arc.start, arc.end});
    polys.push_back(std::move(p));
  }
  for (const auto& pair : table.pairs) {
    if (!pair.orientation_reversing) {
      throw InvariantViolation("label " + format_turns(pair.label) + " is glued orientation-preservingly");
    }
    auto& ea = polys[static_cast<std::size_t>(pair.face_a)].edges[static_cast<std::size_t>(pair.arc_a)];
    auto& eb = polys[static_cast<std::size_t>(pair.face_b)].edges[static_cast<std::size_t>(pair.arc_b)];
    ea.partner = EdgeRef{pair.face_b, pair.arc_b};
    eb.partner = EdgeRef{pair.face_a, pair.arc_a};
    ea.label = pair.label;
    eb.label = pair.label;
  }
  return PolygonComplex(std::move(polys));
}

Turns return_time(const GluingTable& table) {
  std::optional<Turns> common;
  for (const auto& face : table.faces) {
    const Turns q(phi_of(table, face.torus).q);
    Turns best = 1 / q;
    for (const auto& other : table.faces) {
      if (other.torus != face.torus || other.eta == face.eta) continue;
      best = std::min(best, wrap(other.eta - face.eta) / q);
    }
    if (common && *common != best) throw InvariantViolation("leaf disks are not evenly spaced along the fibres");
    common = best;
  }
  if (!common) throw InvariantViolation("empty leaf");
  return *common;
}

CombinatorialMap monodromy_map(const GluingTable& table, const PolygonComplex& f) {
  const Turns t = return_time(table);
  std::vector<int> pimg;
  std::vector<std::vector<int>> eimg;
  for (std::size_t i = 0; i < table.faces.size(); ++i) {
    const auto& face = table.faces[i];
    const auto& chart = phi_of(table, face.torus);
    const Turns eta = wrap(face.eta + Turns(chart.q) * t);
    const Turns rotation = Turns(chart.p) * t;
    int target = -1;
    for (std::size_t j = 0; j < table.faces.size(); ++j) {
      if (table.faces[j].torus == face.torus && table.faces[j].eta == eta) target = static_cast<int>(j);
    }
    if (target < 0) throw InvariantViolation("fibre flow leaves the leaf from " + face.name);
    pimg.push_back(target);
    eimg.emplace_back();
    const auto& src = f.polygon(static_cast<int>(i));
    const auto& dst = f.polygon(target);
    for (const auto& edge : src.edges) {
      const Turns start = wrap(edge.theta_start + rotation);
      int hit = -1;
      for (std::size_t k = 0; k < dst.size(); ++k) {
        if (dst.edges[k].theta_start == start && dst.edges[k].theta_end == wrap(edge.theta_end + rotation)) {
          hit = static_cast<int>(k);
        }
      }
      if (hit < 0) throw InvariantViolation("fibre flow does not carry sides of " + src.name + " to sides");
      const auto& image = dst.edges[static_cast<std::size_t>(hit)];
      if (edge.label.has_value() != image.label.has_value() ||
          (edge.label && wrap(*edge.label + t) != *image.label)) {
        throw InvariantViolation("label shift inconsistent with gluing on " + src.name);
      }
      eimg.back().push_back(hit);
    }
  }
  CombinatorialMap sigma(std::move(pimg), std::move(eimg), false);
  if (!sigma.is_automorphism(f)) throw InvariantViolation("first-return map is not a complex automorphism");
  return sigma;
}

std::vector<BranchArc> branch_arcs(const GluingTable& table, const PolygonComplex& f) {
  const Turns period = return_time(table);
  std::vector<BranchArc> out;
  for (int torus = 0; torus < 2; ++torus) {
    const auto& chart = phi_of(table, torus);
    for (const Turns w : {Turns(0), Turns(1, 2)}) {
      // Flow the disk D^2 x {w} backwards to the nearest disk of F.
      int face = -1;
      Turns tau;
      for (std::size_t i = 0; i < table.faces.size(); ++i) {
        if (table.faces[i].torus != torus) continue;
        const Turns back = wrap(w - table.faces[i].eta) / Turns(chart.q);
        if (face < 0 || back < tau) {
          face = static_cast<int>(i);
          tau = back;
        }
      }
      const Turns shift = Turns(chart.p) * tau;
      // The real diameter runs from angle 0 to angle 1/2.
      const EdgePoint a = point_at_angle(f, face, wrap(-shift));
      const EdgePoint b = point_at_angle(f, face, wrap(Turns(1, 2) - shift));
      if (a.pos != Turns(1, 2) || b.pos != Turns(1, 2)) {
        throw InvariantViolation("branch arc in " + f.polygon(face).name + " does not end at side midpoints");
      }
      out.push_back({torus, w, face, tau / period, Chord{face, a.edge, a.pos, b.edge, b.pos}});
    }
  }
  return out;
}

CurveSystem branch_curves(const GluingTable& table, const PolygonComplex& f, const PolygonComplex& df) {
  if (df.face_count() != 2 * f.face_count()) throw InvalidArgument("second complex is not the double");
  std::map<Turns, std::vector<Chord>> by_height;
  for (const auto& arc : branch_arcs(table, f)) {
    auto& chords = by_height[arc.height];
    chords.push_back(arc.chord);
    const EdgePoint a = mirror_point(f, arc.chord.from());
    const EdgePoint b = mirror_point(f, arc.chord.to());
    chords.push_back({a.polygon, a.edge, a.pos, b.edge, b.pos});
  }
  CurveSystem out;
  for (auto& [height, chords] : by_height) {
    std::vector<bool> used(chords.size(), false);
    for (std::size_t seed = 0; seed < chords.size(); ++seed) {
      if (used[seed]) continue;
      Curve curve;
      Chord current = chords[seed];
      used[seed] = true;
      for (;;) {
        curve.chords.push_back(current);
        const EdgePoint next = df.opposite(current.to());
        if (next == current.to()) throw InvariantViolation("branch arc ends on a free side of the double");
        if (next == curve.chords.front().from()) break;
        bool found = false;
        for (std::size_t k = 0; k < chords.size() && !found; ++k) {
          if (used[k]) continue;
          if (chords[k].from() == next) {
            current = chords[k];
          } else if (chords[k].to() == next) {
            current = chords[k].reversed();
          } else {
            continue;
          }
          used[k] = true;
          found = true;
        }
        if (!found) throw InvariantViolation("branch arcs fail to close into simple curves");
      }
      validate_curve(df, curve);
      out.curves.push_back(std::move(curve));
      out.heights.push_back(height);
    }
  }
  return out;
}

LinkLift lift_link_curves(const PolygonComplex& df, const CombinatorialMap& d_sigma, const CurveSystem& base) {
  const auto n = d_sigma.order(df);
  if (!n) throw InvariantViolation("monodromy has no finite order");
  if (base.heights.size() != base.curves.size()) throw InvalidArgument("base curves need heights");
  LinkLift out;
  for (int k = 0; k < *n; ++k) {
    // A point at height (k + h)/n lies over (D sigma)^k of its projection,
    // so the projection is (D sigma)^{-k} of the base curve.
    const int power = (*n - k) % *n;
    const CombinatorialMap f = d_sigma.power(power);
    for (std::size_t c = 0; c < base.curves.size(); ++c) {
      Curve image = apply_map(f, base.curves[c]);
      int index = -1;
      for (std::size_t j = 0; j < out.projected.size(); ++j) {
        if (same_curve_setwise(out.projected[j], image)) index = static_cast<int>(j);
      }
      if (index < 0) {
        validate_curve(df, image);
        index = static_cast<int>(out.projected.size());
        out.projected.push_back(std::move(image));
      }
      out.components.push_back({(Turns(k) + base.heights[c]) / Turns(*n), static_cast<int>(c), power, index});
    }
  }
  std::sort(out.components.begin(), out.components.end(),
            [](const LinkComponent& l, const LinkComponent& r) { return l.height < r.height; });
  return out;
}

FiberSurface build_fiber_surface(long long a3, long long b3) {
  FiberSurface s;
  s.gluing = derive_gluing(a3, b3);
  s.f = build_F(s.gluing);
  s.sigma = monodromy_map(s.gluing, s.f);
  s.df = double_surface(s.f);
  s.d_sigma = double_map(s.f, s.sigma);
  if (!s.d_sigma.is_automorphism(s.df)) throw InvariantViolation("doubled monodromy is not an automorphism");
  s.involution = doubling_involution(s.df);
  if (!s.involution.is_automorphism(s.df)) throw InvariantViolation("doubling involution is not an automorphism");
  s.branch = branch_curves(s.gluing, s.f, s.df);
  s.link = lift_link_curves(s.df, s.d_sigma, s.branch);
  return s;
}

bool isomorphic(const PolygonComplex& a, const PolygonComplex& b) {
  const std::size_t n = a.face_count();
  if (n != b.face_count()) return false;
  if (n == 0) return true;
  if (!a.connected() || !b.connected()) throw InvalidArgument("isomorphism test needs connected complexes");
  for (std::size_t q0 = 0; q0 < n; ++q0) {
    const std::size_t m0 = a.polygons()[0].size();
    if (b.polygons()[q0].size() != m0) continue;
    for (std::size_t r0 = 0; r0 < m0; ++r0) {
      // Polygon map and side rotation, grown along glued sides.
      std::vector<int> pmap(n, -1), rot(n, 0);
      std::vector<bool> taken(n, false);
      pmap[0] = static_cast<int>(q0);
      rot[0] = static_cast<int>(r0);
      taken[q0] = true;
      std::vector<std::size_t> queue{0};
      bool ok = true;
      for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
        const std::size_t p = queue[qi];
        const auto& pa = a.polygons()[p];
        const auto& pb = b.polygons()[static_cast<std::size_t>(pmap[p])];
        const std::size_t m = pa.size();
        for (std::size_t e = 0; e < m && ok; ++e) {
          const auto& ea = pa.edges[e];
          const auto& eb = pb.edges[(e + static_cast<std::size_t>(rot[p])) % m];
          if (ea.partner.has_value() != eb.partner.has_value()) {
            ok = false;
            break;
          }
          if (!ea.partner) continue;
          const auto pp = static_cast<std::size_t>(ea.partner->polygon);
          const auto qp = static_cast<std::size_t>(eb.partner->polygon);
          const std::size_t mp = a.polygons()[pp].size();
          if (b.polygons()[qp].size() != mp) {
            ok = false;
            break;
          }
          const int r = static_cast<int>((static_cast<std::size_t>(eb.partner->edge) + mp -
                                          static_cast<std::size_t>(ea.partner->edge)) % mp);
          if (pmap[pp] < 0) {
            if (taken[qp]) {
              ok = false;
              break;
            }
            pmap[pp] = static_cast<int>(qp);
            rot[pp] = r;
            taken[qp] = true;
            queue.push_back(pp);
          } else if (pmap[pp] != static_cast<int>(qp) || rot[pp] != r) {
            ok = false;
          }
        }
      }
      if (ok && queue.size() == n) return true;
    }
  }
  return false;
}

}  // namespace tetrus::surface
