#include "tetrus/surface/spin.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <tuple>

#include "tetrus/euler.hpp"

namespace tetrus::surface {

namespace {

using SystemKey = std::vector<std::vector<ChordKey>>;

// The points a curve may pass through: the gaps between lambda crossings on
// every glued side, one point per gap. Points are numbered along canonical
// sides in increasing position.
class SlotTable {
 public:
  SlotTable(const PolygonComplex& c, const CurveSystem& lambdas) {
    std::map<EdgeRef, std::vector<Turns>> crossings;
    for (const auto& curve : lambdas.curves) {
      for (const auto& ch : curve.chords) {
        const EdgePoint k = c.canonical(ch.to());
        crossings[{k.polygon, k.edge}].push_back(k.pos);
      }
    }
    views_.resize(c.face_count());
    for (std::size_t p = 0; p < c.face_count(); ++p) views_[p].resize(c.polygons()[p].size());
    for (std::size_t p = 0; p < c.face_count(); ++p) {
      for (std::size_t e = 0; e < c.polygons()[p].size(); ++e) {
        const EdgeRef self{static_cast<int>(p), static_cast<int>(e)};
        const auto partner = c.partner(self);
        if (!partner || *partner < self) continue;
        std::vector<Turns> cuts = crossings[self];
        cuts.push_back(0);
        cuts.push_back(1);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
          const Turns u = (cuts[k] + cuts[k + 1]) / 2;
          const int id = static_cast<int>(points_.size());
          points_.push_back({self.polygon, self.edge, u});
          views_[p][e].push_back({id, u});
          views_[static_cast<std::size_t>(partner->polygon)][static_cast<std::size_t>(partner->edge)].push_back(
              {id, 1 - u});
        }
      }
    }
  }

  std::size_t size() const { return points_.size(); }
  const EdgePoint& point(int id) const { return points_[static_cast<std::size_t>(id)]; }
  // (id, position) of the points on one side as seen from its polygon.
  const std::vector<std::pair<int, Turns>>& on_side(int polygon, int edge) const {
    return views_[static_cast<std::size_t>(polygon)][static_cast<std::size_t>(edge)];
  }

 private:
  std::vector<EdgePoint> points_;
  std::vector<std::vector<std::vector<std::pair<int, Turns>>>> views_;
};

struct LambdaChord {
  Chord chord;
  int curve;
};

struct Candidate {
  Curve curve;
  std::vector<int> hits;       // signed crossing count with each lambda
  long long total = 0;
  std::vector<int> points;     // sorted point ids
  std::vector<int> per_polygon;
};

class CurveEnumerator {
 public:
  CurveEnumerator(const PolygonComplex& c, const CurveSystem& lambdas, int bound)
      : c_(c), slots_(c, lambdas), bound_(bound), lambda_count_(lambdas.curves.size()) {
    lambda_chords_.resize(c.face_count());
    for (std::size_t j = 0; j < lambdas.curves.size(); ++j) {
      for (const auto& ch : lambdas.curves[j].chords) {
        lambda_chords_[static_cast<std::size_t>(ch.polygon)].push_back({ch, static_cast<int>(j)});
      }
    }
  }

  std::vector<Candidate> run() {
    std::vector<Candidate> out;
    std::set<std::vector<ChordKey>> seen;
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      start_ = static_cast<int>(s);
      used_.assign(slots_.size(), false);
      used_[s] = true;
      in_polygon_.assign(c_.face_count(), {});
      signs_.assign(lambda_count_, 0);
      chords_.clear();
      found_.clear();
      extend(slots_.point(start_), 0);
      for (auto& cand : found_) {
        if (seen.insert(curve_key(cand.curve)).second) out.push_back(std::move(cand));
      }
    }
    return out;
  }

 private:
  void extend(const EdgePoint& entry, long long total) {
    const auto p = static_cast<std::size_t>(entry.polygon);
    if (static_cast<int>(in_polygon_[p].size()) >= bound_) return;
    const int sides = static_cast<int>(c_.polygons()[p].size());
    for (int e = 0; e < sides; ++e) {
      if (e == entry.edge || !c_.partner({entry.polygon, e})) continue;
      for (const auto& [id, pos] : slots_.on_side(entry.polygon, e)) {
        const bool closing = id == start_;
        if (!closing && (used_[static_cast<std::size_t>(id)] || id < start_)) continue;
        const Chord chord{entry.polygon, entry.edge, entry.pos, e, pos};
        // Closing must arrive from the far side of the starting point.
        if (closing && c_.opposite(chord.to()) != slots_.point(start_)) continue;
        bool blocked = false;
        for (const auto& other : in_polygon_[p]) {
          if (chord_crossing(chord, other, static_cast<std::size_t>(sides)) != 0) {
            blocked = true;
            break;
          }
        }
        if (blocked) continue;
        std::vector<std::pair<int, int>> hits;
        for (const auto& lc : lambda_chords_[p]) {
          const int sign = chord_crossing(chord, lc.chord, static_cast<std::size_t>(sides));
          if (sign != 0) hits.push_back({lc.curve, sign});
        }
        if (hits.empty()) continue;
        const auto saved = signs_;
        bool coherent = true;
        for (const auto& [j, sign] : hits) {
          auto& s = signs_[static_cast<std::size_t>(j)];
          if (s == 0) {
            s = sign;
          } else if (s != sign) {
            coherent = false;
            break;
          }
        }
        if (coherent) {
          in_polygon_[p].push_back(chord);
          chords_.push_back(chord);
          const long long next_total = total + static_cast<long long>(hits.size());
          if (closing) {
            record(next_total);
          } else {
            used_[static_cast<std::size_t>(id)] = true;
            extend(c_.opposite(chord.to()), next_total);
            used_[static_cast<std::size_t>(id)] = false;
          }
          chords_.pop_back();
          in_polygon_[p].pop_back();
        }
        signs_ = saved;
      }
    }
  }

  void record(long long total) {
    Candidate cand;
    cand.curve.chords = chords_;
    cand.total = total;
    cand.hits.assign(lambda_count_, 0);
    cand.per_polygon.assign(c_.face_count(), 0);
    for (const auto& ch : chords_) {
      ++cand.per_polygon[static_cast<std::size_t>(ch.polygon)];
      const auto sides = c_.polygons()[static_cast<std::size_t>(ch.polygon)].size();
      for (const auto& lc : lambda_chords_[static_cast<std::size_t>(ch.polygon)]) {
        cand.hits[static_cast<std::size_t>(lc.curve)] += chord_crossing(ch, lc.chord, sides);
      }
    }
    std::set<int> ids;
    for (std::size_t k = 0; k < slots_.size(); ++k) {
      if (used_[k]) ids.insert(static_cast<int>(k));
    }
    cand.points.assign(ids.begin(), ids.end());
    found_.push_back(std::move(cand));
  }

  const PolygonComplex& c_;
  SlotTable slots_;
  int bound_;
  std::size_t lambda_count_;
  std::vector<std::vector<LambdaChord>> lambda_chords_;
  int start_ = 0;
  std::vector<bool> used_;
  std::vector<std::vector<Chord>> in_polygon_;
  std::vector<int> signs_;
  std::vector<Chord> chords_;
  std::vector<Candidate> found_;
};

bool disjoint(const PolygonComplex& c, const Candidate& a, const Candidate& b, int bound) {
  for (std::size_t p = 0; p < a.per_polygon.size(); ++p) {
    if (a.per_polygon[p] + b.per_polygon[p] > bound) return false;
  }
  std::vector<int> common;
  std::set_intersection(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(),
                        std::back_inserter(common));
  if (!common.empty()) return false;
  for (const auto& x : a.curve.chords) {
    for (const auto& y : b.curve.chords) {
      if (x.polygon == y.polygon && chord_crossing(x, y, c.polygon(x.polygon).size()) != 0) return false;
    }
  }
  return true;
}

// Same criterion as check_spin_hypothesis, on precomputed signed hit counts of
// sign-coherent curves.
bool quick_valid(const std::vector<const Candidate*>& system, std::size_t lambdas) {
  for (std::size_t j = 0; j < lambdas; ++j) {
    bool met = false;
    for (const auto* c : system) met = met || c->hits[j] != 0;
    if (!met) return false;
  }
  const std::size_t n = system.size();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t j = 0; j < lambdas && ok; ++j) {
      int want = 0;
      for (std::size_t i = 0; i < n && ok; ++i) {
        const int h = system[i]->hits[j];
        if (h == 0) continue;
        const int s = ((mask >> i) & 1u ? -1 : 1) * (h > 0 ? 1 : -1);
        if (want == 0) {
          want = s;
        } else if (want != s) {
          ok = false;
        }
      }
    }
    if (ok) return true;
  }
  return false;
}

std::vector<CombinatorialMap> close_group(const PolygonComplex& c, const std::vector<CombinatorialMap>& gens) {
  std::vector<CombinatorialMap> group{CombinatorialMap::identity(c)};
  for (std::size_t k = 0; k < group.size(); ++k) {
    for (const auto& g : gens) {
      CombinatorialMap h = compose(g, group[k]);
      if (std::find(group.begin(), group.end(), h) == group.end()) group.push_back(std::move(h));
    }
    if (group.size() > 4096) throw InvariantViolation("symmetry group too large");
  }
  return group;
}

SystemKey system_key(const std::vector<Curve>& curves) {
  SystemKey key;
  for (const auto& c : curves) key.push_back(curve_key(c));
  std::sort(key.begin(), key.end());
  return key;
}

SystemKey canonical_key(const std::vector<CombinatorialMap>& group, const std::vector<Curve>& curves) {
  SystemKey best = system_key(curves);
  for (const auto& g : group) {
    std::vector<Curve> image;
    for (const auto& c : curves) image.push_back(apply_map(g, c));
    best = std::min(best, system_key(image));
  }
  return best;
}

}  // namespace

std::vector<Curve> enumerate_spin_curves(const PolygonComplex& df, const CurveSystem& lambdas, int bound) {
  if (bound < 1) return {};
  auto found = CurveEnumerator(df, lambdas, bound).run();
  std::stable_sort(found.begin(), found.end(),
                   [](const Candidate& a, const Candidate& b) { return a.total < b.total; });
  std::vector<Curve> out;
  for (auto& c : found) out.push_back(std::move(c.curve));
  return out;
}

SpinCheck check_spin_hypothesis(const PolygonComplex& c, const CurveSystem& gammas, const CurveSystem& lambdas) {
  SpinCheck out;
  const std::size_t n = gammas.curves.size();
  const std::size_t m = lambdas.curves.size();
  out.table.assign(n, std::vector<IntersectionNumbers>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out.table[i][j] = intersection_numbers(c, gammas.curves[i], lambdas.curves[j]);
      out.total_geometric += out.table[i][j].geometric;
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    bool met = false;
    for (std::size_t i = 0; i < n; ++i) met = met || out.table[i][j].geometric > 0;
    if (!met) {
      out.failure = "lambda " + std::to_string(j) + " meets no gamma";
      out.violated = std::make_pair(-1, static_cast<int>(j));
      return out;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto& t = out.table[i][j];
      if (std::llabs(t.algebraic) != t.geometric) {
        out.failure = "gamma " + std::to_string(i) + " crosses lambda " + std::to_string(j) +
                      " with both signs";
        out.violated = std::make_pair(static_cast<int>(i), static_cast<int>(j));
        return out;
      }
    }
  }
  if (n >= 31) throw InvalidArgument("too many curves for the sign search");
  std::optional<std::pair<int, int>> first_conflict;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    std::vector<int> gs(n), ls(m, 0);
    for (std::size_t i = 0; i < n; ++i) gs[i] = (mask >> i) & 1ul ? -1 : 1;
    bool ok = true;
    for (std::size_t j = 0; j < m && ok; ++j) {
      for (std::size_t i = 0; i < n && ok; ++i) {
        const auto a = out.table[i][j].algebraic;
        if (a == 0) continue;
        const int need = gs[i] * (a > 0 ? 1 : -1);
        if (ls[j] == 0) {
          ls[j] = need;
        } else if (ls[j] != need) {
          ok = false;
          if (!first_conflict) first_conflict = std::make_pair(static_cast<int>(i), static_cast<int>(j));
        }
      }
    }
    if (ok) {
      out.ok = true;
      out.gamma_signs = std::move(gs);
      out.lambda_signs = std::move(ls);
      return out;
    }
  }
  out.failure = "no orientation makes every algebraic count equal the geometric count";
  out.violated = first_conflict;
  return out;
}

SpinSearchResult search_spin_system(const PolygonComplex& df, const CurveSystem& lambdas, int bound,
                                    const std::vector<CombinatorialMap>& symmetries) {
  SpinSearchResult out;
  out.bound = bound;
  if (bound < 1) {
    out.message = "none within bound";
    return out;
  }
  auto curves = CurveEnumerator(df, lambdas, bound).run();
  out.curves_enumerated = curves.size();
  std::stable_sort(curves.begin(), curves.end(),
                   [](const Candidate& a, const Candidate& b) { return a.total < b.total; });
  const std::size_t m = lambdas.curves.size();

  std::set<long long> totals;
  for (std::size_t a = 0; a < curves.size(); ++a) {
    totals.insert(curves[a].total);
    for (std::size_t b = a + 1; b < curves.size(); ++b) totals.insert(curves[a].total + curves[b].total);
  }

  const auto group = close_group(df, symmetries);
  for (long long target : totals) {
    std::vector<std::vector<const Candidate*>> valid;
    for (const auto& c : curves) {
      if (c.total == target && quick_valid({&c}, m)) {
        valid.push_back({&c});
        ++out.valid_single_curves;
      }
    }
    for (std::size_t a = 0; a < curves.size(); ++a) {
      for (std::size_t b = a + 1; b < curves.size(); ++b) {
        if (curves[a].total + curves[b].total != target) continue;
        if (!disjoint(df, curves[a], curves[b], bound)) continue;
        if (!quick_valid({&curves[a], &curves[b]}, m)) continue;
        valid.push_back({&curves[a], &curves[b]});
        ++out.valid_curve_pairs;
      }
    }
    if (valid.empty()) continue;

    std::set<SystemKey> classes;
    std::optional<std::tuple<int, SystemKey, SystemKey>> best;
    std::vector<Curve> best_curves;
    for (const auto& system : valid) {
      std::vector<Curve> cs;
      for (const auto* c : system) cs.push_back(c->curve);
      SystemKey key = canonical_key(group, cs);
      classes.insert(key);
      // Two-curve systems first, then the smallest class, then its smallest member.
      std::tuple<int, SystemKey, SystemKey> rank{system.size() == 2 ? 0 : 1, std::move(key), system_key(cs)};
      if (!best || rank < *best) {
        best = std::move(rank);
        best_curves = std::move(cs);
      }
    }
    out.symmetry_classes = classes.size();
    out.minimum_total = target;
    CurveSystem gammas{best_curves, {}};
    SpinCheck check = check_spin_hypothesis(df, gammas, lambdas);
    if (!check.ok || check.total_geometric != target) {
      throw InvariantViolation("search witness fails the intersection criterion: " + check.failure);
    }
    for (std::size_t i = 0; i < gammas.curves.size(); ++i) {
      if (check.gamma_signs[i] < 0) gammas.curves[i] = gammas.curves[i].reversed();
    }
    out.system = std::move(gammas);
    out.check = check_spin_hypothesis(df, out.system, lambdas);
    out.found = true;
    out.message = "valid system found";
    return out;
  }
  out.message = "none within bound";
  return out;
}

SpunFiber spun_fiber_genus(long long base_euler_characteristic, long long intersections) {
  if (intersections < 0) throw InvalidArgument("intersection count must be nonnegative");
  SpunFiber out;
  out.intersections = intersections;
  out.branch_points = 2 * intersections;
  out.euler_characteristic =
      riemann_hurwitz(base_euler_characteristic, 2, simple_double_branching(out.branch_points));
  out.genus = genus_from_chi(out.euler_characteristic, 0);
  return out;
}

SpunFiber spun_fiber_genus(const PolygonComplex& df, const CurveSystem& gammas, const CurveSystem& lambdas) {
  if (!df.closed() || !df.connected()) throw InvalidArgument("fibre surface must be closed and connected");
  const SpinCheck check = check_spin_hypothesis(df, gammas, lambdas);
  if (!check.ok) throw InvariantViolation("spin hypothesis fails: " + check.failure);
  return spun_fiber_genus(df.euler_characteristic(), check.total_geometric);
}

}  // namespace tetrus::surface
