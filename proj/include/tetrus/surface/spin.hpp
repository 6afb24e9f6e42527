#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tetrus/surface/curves.hpp"

namespace tetrus::surface {

// Outcome of the transversality criterion for a family of disjoint curves
// (gammas) against a family of link projections (lambdas).
struct SpinCheck {
  bool ok = false;
  std::vector<int> gamma_signs;   // +1 keeps the given orientation, -1 reverses
  std::vector<int> lambda_signs;
  // table[i][j] = intersection numbers of gamma i with lambda j, as given.
  std::vector<std::vector<IntersectionNumbers>> table;
  long long total_geometric = 0;
  std::string failure;                          // empty on success
  std::optional<std::pair<int, int>> violated;  // (gamma, lambda) on failure
};

// Succeeds iff every lambda meets some gamma and some choice of orientations
// makes algebraic equal geometric intersection for every (gamma, lambda)
// pair. Sign choices are tried in increasing bitmask order over the gammas;
// each lambda's sign is then forced by its first nonzero pairing.
SpinCheck check_spin_hypothesis(const PolygonComplex& c, const CurveSystem& gammas, const CurveSystem& lambdas);

// The curves the search draws from: simple closed curves through the gaps
// between lambda crossings, each chord crossing some lambda, each lambda
// crossed with one sign, at most `bound` chords per polygon. Sorted by total
// intersection with the lambdas, then by discovery order.
std::vector<Curve> enumerate_spin_curves(const PolygonComplex& df, const CurveSystem& lambdas, int bound);

struct SpinSearchResult {
  bool found = false;
  std::string message;          // "none within bound" when nothing is found
  int bound = 0;
  CurveSystem system;           // oriented by the witness
  SpinCheck check;
  long long minimum_total = 0;  // smallest total geometric count of a valid system
  std::size_t curves_enumerated = 0;
  std::size_t valid_single_curves = 0;  // valid one-curve systems at the minimum
  std::size_t valid_curve_pairs = 0;    // valid two-curve systems at the minimum
  std::size_t symmetry_classes = 0;     // of all valid systems at the minimum
};

// Exhaustive search over simple closed curves built from chords through the
// gaps between lambda crossings on each side, with at most `bound` chords per
// polygon. Each chord must cross some lambda, and a curve crosses each lambda
// with one sign only. Systems of one curve or two disjoint curves are tried by
// increasing total intersection; the first total admitting a valid system
// wins. `symmetries` generate a group preserving the lambdas; valid systems
// are grouped into classes under it, and the witness is the smallest class
// representative, two-curve systems first.
SpinSearchResult search_spin_system(const PolygonComplex& df, const CurveSystem& lambdas, int bound,
                                    const std::vector<CombinatorialMap>& symmetries = {});

struct SpunFiber {
  long long intersections = 0;
  long long branch_points = 0;
  long long euler_characteristic = 0;
  long long genus = 0;
};

// The fibre of the pulled-back fibration is a double of the closed surface
// branched at two points per intersection.
SpunFiber spun_fiber_genus(long long base_euler_characteristic, long long intersections);
SpunFiber spun_fiber_genus(const PolygonComplex& df, const CurveSystem& gammas, const CurveSystem& lambdas);

}  // namespace tetrus::surface
