#include "tetrus/abelian.hpp"

namespace tetrus {

namespace {

BigMatrix relation_rows(const SubgroupGraph& g, const SchreierData& s,
                        const std::vector<FreeWord>& relators) {
  BigMatrix rows;
  for (const auto& r : relators) {
    if (!membership(g, r)) throw InvalidArgument("relator " + r.str() + " is not in the subgroup");
    std::vector<BigInt> row;
    for (long long e : rewrite_abelian(g, s, r)) row.emplace_back(e);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

IntegerMatrixNF abelianized_quotient(const SubgroupGraph& g,
                                     const std::vector<FreeWord>& extra_relators) {
  const SchreierData s = schreier_basis(g);
  return invariant_factors(relation_rows(g, s, extra_relators), s.basis.size());
}

InnerHom free_part_projection(const SubgroupGraph& g, const std::vector<FreeWord>& relators,
                              long long modulus) {
  if (modulus < 1) throw InvalidArgument("modulus must be positive");
  const SchreierData s = schreier_basis(g);
  const std::size_t n = s.basis.size();
  const SmithForm form = smith_normal_form(relation_rows(g, s, relators), n);
  std::size_t free_column = n;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = form.diagonal[i];
    if (d == 0) {
      if (free_column != n) throw InvariantViolation("H_1 is not infinite cyclic: free rank exceeds 1");
      free_column = i;
    } else if (d != 1) {
      throw InvariantViolation("H_1 is not infinite cyclic: torsion factor " + d.str());
    }
  }
  if (free_column == n) throw InvariantViolation("H_1 is not infinite cyclic: it is finite");

  InnerHom hom{modulus, {}};
  const BigInt m(modulus);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt r = form.column_transform[i][free_column] % m;
    if (r < 0) r += m;
    hom.values.push_back(r.convert_to<long long>());
  }
  for (long long v : hom.values) {
    if (v == 0) continue;
    if (2 * v > modulus) {
      for (auto& w : hom.values) w = mod_floor(-w, modulus);
    }
    break;
  }
  return hom;
}

FibrationHom derive_fibration_hom() {
  FibrationHom out{kernel_graph(CyclicHom::make(2, 1, 1)), {}, {}};
  out.schreier = schreier_basis(out.gamma2);
  const FreeWord h = FreeWord::h();
  const FreeWord m = parse_word("h x h x^-2");
  out.hom = free_part_projection(out.gamma2, {h.pow(2), m.pow(2)}, 6);
  return out;
}

}  // namespace tetrus
