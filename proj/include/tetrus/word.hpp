#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tetrus/error.hpp"

namespace tetrus {

// Letters of F(x, h) are coded so that integer order is the shortlex letter
// order x < x^-1 < h < h^-1.
using Letter = std::uint8_t;
inline constexpr Letter kX = 0;
inline constexpr Letter kXInv = 1;
inline constexpr Letter kH = 2;
inline constexpr Letter kHInv = 3;
inline constexpr int kRank = 2;
inline constexpr int kAlphabetSize = 2 * kRank;

constexpr Letter letter_inverse(Letter l) { return static_cast<Letter>(l ^ 1U); }
constexpr int letter_generator(Letter l) { return l >> 1; }
constexpr int letter_sign(Letter l) { return (l & 1U) ? -1 : 1; }
constexpr Letter make_letter(int generator, int sign) {
  return static_cast<Letter>(2 * generator + (sign < 0 ? 1 : 0));
}

// One entry of an unreduced input sequence: a generator name and a sign.
struct SignedLetter {
  char generator;
  int sign;
};

// A freely reduced word in F(x, h). Values are immutable once built.
class FreeWord {
 public:
  FreeWord() = default;

  // Reduces the given letter codes. Throws InvalidArgument on a bad code.
  static FreeWord from_letters(std::span<const Letter> letters);
  static FreeWord x() { return FreeWord({kX}, Reduced{}); }
  static FreeWord h() { return FreeWord({kH}, Reduced{}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  FreeWord inverse() const;
  FreeWord pow(long long exponent) const;
  long long exponent_sum(int generator) const;

  friend FreeWord operator*(const FreeWord& a, const FreeWord& b);
  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  // Shortlex: shorter words first, then lexicographic by letter code.
  friend std::strong_ordering operator<=>(const FreeWord& a, const FreeWord& b);

  // Renders with exponent runs collapsed, e.g. "h x h x^-2". The identity
  // renders as "1". `names` supplies the two generator spellings.
  std::string str(std::string_view x_name = "x", std::string_view h_name = "h") const;

 private:
  struct Reduced {};
  FreeWord(std::vector<Letter> letters, Reduced) : letters_(std::move(letters)) {}

  std::vector<Letter> letters_;
};

// Freely reduces an arbitrary signed-letter sequence over {x, h}.
// Throws InvalidArgument for an unknown generator or a sign other than +1/-1.
FreeWord reduce(std::span<const SignedLetter> raw);

// Syntax error in a word literal; `column` is 1-based within the literal.
class WordSyntaxError : public Error {
 public:
  WordSyntaxError(std::size_t column, const std::string& message)
      : Error(message), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// One expanded letter of a literal over an arbitrary alphabet.
struct NamedLetter {
  std::string generator;
  int sign;
  std::size_t column;  // 1-based column of the identifier in the literal
};

// Expands a word literal (identifiers, ^ exponents, parentheses) into a flat
// letter sequence without reducing it. Grammar:
//   word := factor*      factor := (ident | '(' word ')') ('^' integer)?
// Identifiers are [A-Za-z_][A-Za-z0-9_]*; whitespace separates factors.
std::vector<NamedLetter> expand_word_literal(std::string_view text);

// Parses a literal over the alphabet {x_name, h_name} into a reduced word.
FreeWord parse_word(std::string_view text, std::string_view x_name = "x",
                    std::string_view h_name = "h");

// A homomorphism F(x, h) -> Z/n given by the images of x and h.
struct CyclicHom {
  long long modulus = 1;
  long long image_x = 0;
  long long image_h = 0;

  // Normalizes residues into [0, n); throws if modulus < 1.
  static CyclicHom make(long long modulus, long long image_x, long long image_h);
  bool surjective() const;
  long long image(Letter l) const;
  friend bool operator==(const CyclicHom&, const CyclicHom&) = default;
};

long long hom_image(const CyclicHom& f, const FreeWord& w);
long long hom_image(const CyclicHom& f, std::span<const Letter> raw);

// Reduced word over an arbitrary finite alphabet of a presentation.
struct PresentationLetter {
  std::size_t generator;
  int sign;
  friend bool operator==(const PresentationLetter&, const PresentationLetter&) = default;
};
using PresentationWord = std::vector<PresentationLetter>;

class GroupPresentation {
 public:
  // Relators are given as word literals over `generators`; each is reduced and
  // must be nonempty afterwards.
  GroupPresentation(std::vector<std::string> generators,
                    const std::vector<std::string>& relator_literals);

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<PresentationWord>& relators() const { return relators_; }

 private:
  std::vector<std::string> generators_;
  std::vector<PresentationWord> relators_;
};

// Images of each presentation generator in Z/modulus.
struct CyclicAssignment {
  long long modulus = 1;
  std::vector<long long> images;
  bool surjective() const;
};

// True iff every relator of `p` evaluates to 0 under `f`.
bool relators_killed(const CyclicAssignment& f, const GroupPresentation& p);

// Orbifold group E_n = < X, H | H^n, (H X H X^-2)^n >.
GroupPresentation orbifold_presentation(int n);

long long mod_floor(long long a, long long n);

}  // namespace tetrus
