#pragma once

#include <map>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "tetrus/subgroup_graph.hpp"

namespace tetrus {

// The doubled group: two copies of F(x, h) amalgamated over the boundary
// subgroup Lambda. A word is a product of syllables tagged by copy.
enum class Side : std::uint8_t { plain = 0, mirror = 1 };

constexpr Side other(Side s) { return s == Side::plain ? Side::mirror : Side::plain; }

struct Syllable {
  Side side;
  FreeWord word;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

class DoubledWord {
 public:
  DoubledWord() = default;
  // Drops identity syllables and merges neighbours on the same side, so the
  // stored sequence alternates.
  explicit DoubledWord(std::vector<Syllable> raw);
  static DoubledWord single(Side side, FreeWord word);

  // Literal syntax: free-word factors, each optionally prefixed by '~' to put
  // it in the mirror copy, e.g. "x ~x^-1" or "(x h)^2 ~(h x)".
  static DoubledWord parse(std::string_view text);

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool empty() const { return syllables_.empty(); }

  DoubledWord inverse() const;
  friend DoubledWord operator*(const DoubledWord& a, const DoubledWord& b);
  friend bool operator==(const DoubledWord&, const DoubledWord&) = default;

  std::string str() const;

 private:
  std::vector<Syllable> syllables_;
};

// Swaps the two copies syllable by syllable.
DoubledWord mirror(const DoubledWord& w);

// Context for amalgam computations: Lambda as a subgroup graph together with
// its generators, and a memo of right-coset representatives. Queries are safe
// from multiple threads; the memo only ever stores values that coset_reduce
// would recompute identically.
class AmalgamContext {
 public:
  explicit AmalgamContext(std::vector<FreeWord> lambda_generators);

  // Lambda = < h, h x h x^-2, (x h x) h^-1 (x h x)^-1 >, the four-holed sphere group.
  static AmalgamContext boundary_subgroup();

  const SubgroupGraph& lambda() const { return lambda_; }
  const std::vector<FreeWord>& generators() const { return generators_; }
  FreeWord representative(const FreeWord& w) const;
  std::size_t memo_size() const;

  AmalgamContext(const AmalgamContext& other);
  AmalgamContext& operator=(const AmalgamContext&) = delete;

 private:
  std::vector<FreeWord> generators_;
  SubgroupGraph lambda_;
  mutable std::shared_mutex memo_mutex_;
  mutable std::map<FreeWord, FreeWord> memo_;
};

struct NormalForm {
  FreeWord lambda_part;            // c, an element of Lambda
  std::vector<Syllable> syllables; // alternating nontrivial coset representatives
  friend bool operator==(const NormalForm&, const NormalForm&) = default;

  DoubledWord reassemble() const;
  std::string str() const;
};

NormalForm normal_form(const AmalgamContext& ctx, const DoubledWord& w);
std::size_t syllable_length(const AmalgamContext& ctx, const DoubledWord& w);
bool amalgam_equal(const AmalgamContext& ctx, const DoubledWord& a, const DoubledWord& b);

// A cyclic homomorphism applied identically on both copies; it is well
// defined on the amalgam because both copies agree on Lambda.
struct EquivariantHom {
  CyclicHom base;
};

long long hom_image(const EquivariantHom& f, const DoubledWord& w);

// Writes an element of ker(f) as a product of single-sided kernel elements by
// peeling off the last syllable with a balancing element of Lambda.
std::vector<DoubledWord> kernel_decompose(const AmalgamContext& ctx, const EquivariantHom& f,
                                          const DoubledWord& w);

}  // namespace tetrus
