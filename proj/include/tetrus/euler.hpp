#pragma once

#include <vector>

#include "tetrus/error.hpp"

namespace tetrus {

// Local degrees of the preimages of one branch point (or branch arc/curve).
// The entries sum to the covering degree; their count is the number of
// preimages.
struct BranchPointDatum {
  std::vector<long long> local_degrees;
};

// chi(cover) = degree * chi(base) - sum over branch points of
// (degree - #preimages). Throws if a datum does not sum to `degree`.
long long riemann_hurwitz(long long chi_base, long long degree,
                          const std::vector<BranchPointDatum>& branch);

// Genus of a connected orientable surface: (2 - b - chi) / 2. Throws when the
// parity is wrong or the result would be negative.
long long genus_from_chi(long long chi, long long boundary_components);

// BranchPointDatum for `count` simple branch points of a double cover.
std::vector<BranchPointDatum> simple_double_branching(long long count);

}  // namespace tetrus
