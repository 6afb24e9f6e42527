#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tetrus/subgroup_graph.hpp"

namespace tetrus {

using BigInt = boost::multiprecision::cpp_int;
using BigMatrix = std::vector<std::vector<BigInt>>;

// Invariant factors of a finitely generated abelian group: each divides the
// next, units are dropped and zeros (free summands) trail.
struct IntegerMatrixNF {
  std::vector<BigInt> factors;
  std::size_t free_rank() const;
  std::string str() const;  // e.g. "[2, 0]"
  friend bool operator==(const IntegerMatrixNF&, const IntegerMatrixNF&) = default;
};

// Diagonal form U A V = D of an integer matrix. `diagonal` has one entry per
// column of A (entries past the row count are zero) and satisfies the
// divisibility chain. Only the column transform V is retained.
struct SmithForm {
  std::vector<BigInt> diagonal;
  BigMatrix column_transform;
};

SmithForm smith_normal_form(BigMatrix a, std::size_t columns);

// Invariant factors of Z^columns / rowspace(rows).
IntegerMatrixNF invariant_factors(const BigMatrix& rows, std::size_t columns);

// Abelianization of the subgroup of `g` modulo the normal closure of
// `extra_relators`, each of which must lie in the subgroup.
IntegerMatrixNF abelianized_quotient(const SubgroupGraph& g,
                                     const std::vector<FreeWord>& extra_relators);

// Projection of the subgroup onto the free part of its relative H_1, reduced
// mod `modulus`. Requires H_1 to be infinite cyclic. Residues are
// sign-normalized so the first nonzero one lies in [1, modulus/2].
InnerHom free_part_projection(const SubgroupGraph& g, const std::vector<FreeWord>& relators,
                              long long modulus);

// The Z/6 quotient of Gamma_2 = ker(x, h -> 1 mod 2) through H_1 of the
// filled double cover, killing h^2 and (h x h x^-2)^2.
struct FibrationHom {
  SubgroupGraph gamma2;
  SchreierData schreier;
  InnerHom hom;
};
FibrationHom derive_fibration_hom();

}  // namespace tetrus
