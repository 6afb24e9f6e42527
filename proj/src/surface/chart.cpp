#include "tetrus/surface/chart.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace tetrus::surface {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

AnnulusChart make_chart(long long p, long long q, long long a, long long b, ChartKind which) {
  if (q < 1) throw InvalidArgument("chart needs q >= 1");
  if (std::gcd(p, q) != 1) throw InvalidArgument("chart needs coprime p and q");
  if (a * p + b * q != 1) {
    throw InvalidArgument("Bezout pair (" + std::to_string(a) + ", " + std::to_string(b) +
                          ") does not satisfy a p + b q = 1");
  }
  return AnnulusChart{p, q, a, b, which};
}

// The disk of torus `t` at w-angle `eta`, if it has been assigned an index.
using FaceKey = std::pair<int, Turns>;

struct TurnsLess {
  bool operator()(const FaceKey& l, const FaceKey& r) const {
    if (l.first != r.first) return l.first < r.first;
    return l.second < r.second;
  }
};

std::string face_name(int torus, Turns eta) {
  if (torus == 0) {
    // H_m = D^2 x {e^{2 pi i (m-1)/2}}
    for (int m = 0; m < 2; ++m) {
      if (wrap(Turns(m - 1, 2)) == eta) return "H" + std::to_string(m);
    }
    return "H(" + format_turns(eta) + ")";
  }
  // S_n = D^2 x {e^{2 pi i n/3}}
  for (int n = 0; n < 3; ++n) {
    if (wrap(Turns(n, 3)) == eta) return "S" + std::to_string(n);
  }
  return "S(" + format_turns(eta) + ")";
}

}  // namespace

Turns wrap(Turns t) {
  const long long fl = floor_div(t.numerator(), t.denominator());
  return t - Turns(fl);
}

std::string format_turns(Turns t) {
  std::ostringstream os;
  os << t.numerator();
  if (t.denominator() != 1) os << '/' << t.denominator();
  return os.str();
}

AnnulusChart AnnulusChart::phi(long long p, long long q, long long a, long long b) {
  return make_chart(p, q, a, b, ChartKind::phi);
}

AnnulusChart AnnulusChart::psi(long long p, long long q, long long a, long long b) {
  return make_chart(p, q, a, b, ChartKind::psi);
}

TorusPoint chart_point(const AnnulusChart& c, Turns x, Turns y) {
  if (x < 0 || x > 1 || y < 0 || y > 1) throw InvalidArgument("chart parameters must lie in [0, 1]");
  const Turns q(c.q);
  if (c.which == ChartKind::phi) {
    return {wrap((1 - 2 * x) / (4 * q) + Turns(c.p) * y), wrap(q * y)};
  }
  const Turns shifted = y - Turns(c.a) / (2 * q);
  return {wrap((2 * x + 1) / (4 * q) + Turns(c.p) * shifted), wrap(q * shifted)};
}

TorusPoint conjugate(const TorusPoint& t) { return {wrap(-t.z), wrap(-t.w)}; }

std::vector<DiskArc> disk_boundary(const AnnulusChart& phi, const AnnulusChart& psi, Turns eta) {
  if (phi.which != ChartKind::phi || psi.which != ChartKind::psi || phi.p != psi.p || phi.q != psi.q) {
    throw InvalidArgument("disk_boundary needs the phi and psi charts of one solid torus");
  }
  eta = wrap(eta);
  const long long q = phi.q;
  std::vector<DiskArc> arcs;
  for (const AnnulusChart* c : {&phi, &psi}) {
    // Heights y in [0,1) whose horizontal segment lies in D^2 x {eta}.
    const Turns offset = c->which == ChartKind::psi ? Turns(c->a, 2 * q) : Turns(0);
    for (long long j = 0; j < q; ++j) {
      const Turns y = wrap((eta + Turns(j)) / Turns(q) + offset);
      const TorusPoint p0 = chart_point(*c, 0, y);
      const TorusPoint p1 = chart_point(*c, 1, y);
      if (p0.w != eta || p1.w != eta) throw InvariantViolation("chart segment leaves its disk");
      const bool increasing = wrap(p1.z - p0.z) < Turns(1, 2);
      arcs.push_back(increasing ? DiskArc{p0.z, p1.z, c->which, y, 0}
                                : DiskArc{p1.z, p0.z, c->which, y, 1});
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const DiskArc& l, const DiskArc& r) { return l.start < r.start; });
  Turns total(0);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& next = arcs[(i + 1) % arcs.size()];
    if (arcs[i].end != next.start) throw InvariantViolation("chart arcs do not tile the disk boundary");
    total += wrap(arcs[i].end - arcs[i].start);
  }
  if (total != Turns(1)) throw InvariantViolation("chart arcs overlap on the disk boundary");
  return arcs;
}

GluingTable derive_gluing(long long a3, long long b3, long long a2, long long b2) {
  GluingTable table{AnnulusChart::phi(1, 3, a3, b3), AnnulusChart::psi(1, 3, a3, b3),
                    AnnulusChart::phi(1, 2, a2, b2), AnnulusChart::psi(1, 2, a2, b2), {}, {}, {}};
  const AnnulusChart* phis[2] = {&table.phi3, &table.phi2};
  const AnnulusChart* psis[2] = {&table.psi3, &table.psi2};
  // Labelled arcs: psi_{1/3} arcs on hexagons, phi_{1/2} arcs on squares.
  const ChartKind glued_kind[2] = {ChartKind::psi, ChartKind::phi};

  std::map<FaceKey, std::vector<DiskArc>, TurnsLess> found;
  std::vector<FaceKey> queue{{0, Turns(0)}};
  found[queue.front()] = disk_boundary(*phis[0], *psis[0], Turns(0));
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto [torus, eta] = queue[i];
    for (const auto& arc : found[queue[i]]) {
      if (arc.chart != glued_kind[torus]) continue;
      // phi_{1/2} psi_{1/3}^{-1} fixes chart coordinates, so the partner disk
      // is the one containing the other chart's segment at the same height.
      const int other = 1 - torus;
      const AnnulusChart& target = other == 1 ? table.phi2 : table.psi3;
      const FaceKey key{other, chart_point(target, 0, arc.height).w};
      if (!found.count(key)) {
        found[key] = disk_boundary(*phis[other], *psis[other], key.second);
        queue.push_back(key);
      }
    }
  }

  for (const auto& [key, arcs] : found) {
    LeafFace face{face_name(key.first, key.second), key.first, key.second, arcs, {}};
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      if (arcs[k].chart == glued_kind[key.first]) face.labeled_arcs.push_back(static_cast<int>(k));
    }
    table.faces.push_back(std::move(face));
  }
  std::stable_sort(table.faces.begin(), table.faces.end(), [](const LeafFace& l, const LeafFace& r) {
    if (l.torus != r.torus) return l.torus < r.torus;
    return l.name < r.name;
  });

  // Pair each hexagon label with the square arc of the same height.
  for (std::size_t f = 0; f < table.faces.size(); ++f) {
    const auto& face = table.faces[f];
    if (face.torus != 0) continue;
    for (int k : face.labeled_arcs) {
      const DiskArc& arc = face.arcs[static_cast<std::size_t>(k)];
      const Turns target_eta = chart_point(table.phi2, 0, arc.height).w;
      bool matched = false;
      for (std::size_t g = 0; g < table.faces.size() && !matched; ++g) {
        const auto& sq = table.faces[g];
        if (sq.torus != 1 || sq.eta != target_eta) continue;
        for (int l : sq.labeled_arcs) {
          const DiskArc& partner = sq.arcs[static_cast<std::size_t>(l)];
          if (partner.height != arc.height) continue;
          table.pairs.push_back({arc.height, static_cast<int>(f), k, static_cast<int>(g), l,
                                 arc.x_at_start != partner.x_at_start});
          matched = true;
          break;
        }
      }
      if (!matched) throw InvariantViolation("label " + format_turns(arc.height) + " has no partner arc");
    }
  }
  std::size_t square_labels = 0;
  for (const auto& face : table.faces) {
    if (face.torus == 1) square_labels += face.labeled_arcs.size();
  }
  if (square_labels != table.pairs.size()) {
    throw InvariantViolation("square carries a label with no hexagon partner");
  }
  std::sort(table.pairs.begin(), table.pairs.end(),
            [](const GluingTable::Pair& l, const GluingTable::Pair& r) { return l.label < r.label; });
  for (const auto& p : table.pairs) {
    if (!table.labels.empty() && table.labels.back() == p.label) {
      throw InvariantViolation("label " + format_turns(p.label) + " is used twice");
    }
    table.labels.push_back(p.label);
  }
  return table;
}

}  // namespace tetrus::surface
