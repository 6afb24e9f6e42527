#pragma once

#include <vector>

#include "tetrus/word.hpp"

// Distinguished words of the tangle group F(x, h).
namespace tetrus::tangle {

inline FreeWord meridian_h() { return FreeWord::h(); }
inline FreeWord meridian_m() { return parse_word("h x h x^-2"); }

// Generators of the four-holed sphere subgroup Lambda.
inline std::vector<FreeWord> lambda_generators() {
  return {meridian_h(), meridian_m(), parse_word("(x h x) h^-1 (x h x)^-1")};
}

// The four boundary circles of the four-holed sphere, oriented so that their
// product h c m^-1 d is trivial. The last one is conjugate to m.
inline std::vector<FreeWord> boundary_loops() {
  const FreeWord h = meridian_h();
  const FreeWord c = parse_word("(x h x) h^-1 (x h x)^-1");
  const FreeWord m_inv = meridian_m().inverse();
  return {h, c, m_inv, (h * c * m_inv).inverse()};
}

}  // namespace tetrus::tangle
