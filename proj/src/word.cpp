#include "tetrus/word.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace tetrus {

namespace {

constexpr long long kMaxLiteralExponent = 1'000'000;
constexpr std::size_t kMaxExpandedLength = 10'000'000;

void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == letter_inverse(l)) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  std::vector<NamedLetter> parse() {
    auto letters = parse_word(false);
    skip_space();
    if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return letters;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw WordSyntaxError(pos_ + 1, message);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::vector<NamedLetter> parse_word(bool nested) {
    std::vector<NamedLetter> out;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) {
        if (nested) fail("missing ')'");
        return out;
      }
      char c = text_[pos_];
      if (c == ')') {
        if (!nested) fail("unbalanced ')'");
        return out;
      }
      std::vector<NamedLetter> factor;
      if (c == '(') {
        ++pos_;
        factor = parse_word(true);
        ++pos_;  // consume ')'
      } else if (ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        factor.push_back({std::string(text_.substr(start, pos_ - start)), 1, start + 1});
      } else {
        fail("unexpected character '" + std::string(1, c) + "'");
      }
      long long exponent = parse_exponent();
      append_power(out, factor, exponent);
    }
  }

  long long parse_exponent() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '^') return 1;
    ++pos_;
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) {
      pos_ = start;
      fail("expected integer exponent after '^'");
    }
    std::string number(text_.substr(start, pos_ - start));
    if (pos_ - digits > 7) {
      pos_ = start;
      fail("exponent out of range");
    }
    long long e = std::strtoll(number.c_str(), nullptr, 10);
    if (std::llabs(e) > kMaxLiteralExponent) {
      pos_ = start;
      fail("exponent out of range");
    }
    return e;
  }

  void append_power(std::vector<NamedLetter>& out, const std::vector<NamedLetter>& factor,
                    long long exponent) {
    if (factor.empty() || exponent == 0) return;
    const std::size_t reps = static_cast<std::size_t>(std::llabs(exponent));
    if (factor.size() * reps + out.size() > kMaxExpandedLength) fail("word literal too long");
    for (std::size_t r = 0; r < reps; ++r) {
      if (exponent > 0) {
        out.insert(out.end(), factor.begin(), factor.end());
      } else {
        for (auto it = factor.rbegin(); it != factor.rend(); ++it) {
          out.push_back({it->generator, -it->sign, it->column});
        }
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void append_run(std::ostringstream& os, bool& first, std::string_view name, long long run) {
  if (!first) os << ' ';
  first = false;
  os << name;
  if (run != 1) os << '^' << run;
}

}  // namespace

long long mod_floor(long long a, long long n) {
  long long r = a % n;
  return r < 0 ? r + n : r;
}

FreeWord FreeWord::from_letters(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (l >= kAlphabetSize) throw InvalidArgument("unknown generator-id code " + std::to_string(l));
    push_reduced(out, l);
  }
  return FreeWord(std::move(out), Reduced{});
}

FreeWord FreeWord::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l = letter_inverse(l);
  return FreeWord(std::move(out), Reduced{});
}

FreeWord FreeWord::pow(long long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  FreeWord result;
  FreeWord base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

long long FreeWord::exponent_sum(int generator) const {
  long long s = 0;
  for (Letter l : letters_) {
    if (letter_generator(l) == generator) s += letter_sign(l);
  }
  return s;
}

FreeWord operator*(const FreeWord& a, const FreeWord& b) {
  std::vector<Letter> out = a.letters_;
  out.reserve(a.length() + b.length());
  for (Letter l : b.letters_) push_reduced(out, l);
  return FreeWord(std::move(out), FreeWord::Reduced{});
}

std::strong_ordering operator<=>(const FreeWord& a, const FreeWord& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                b.letters_.begin(), b.letters_.end());
}

std::string FreeWord::str(std::string_view x_name, std::string_view h_name) const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  std::size_t i = 0;
  while (i < letters_.size()) {
    const Letter l = letters_[i];
    long long run = 0;
    while (i < letters_.size() && letters_[i] == l) {
      run += letter_sign(l);
      ++i;
    }
    append_run(os, first, letter_generator(l) == 0 ? x_name : h_name, run);
  }
  return os.str();
}

FreeWord reduce(std::span<const SignedLetter> raw) {
  std::vector<Letter> letters;
  letters.reserve(raw.size());
  for (const auto& sl : raw) {
    int g;
    if (sl.generator == 'x') {
      g = 0;
    } else if (sl.generator == 'h') {
      g = 1;
    } else {
      throw InvalidArgument(std::string("unknown generator-id '") + sl.generator + "'");
    }
    if (sl.sign != 1 && sl.sign != -1) {
      throw InvalidArgument("exponent sign must be +1 or -1, got " + std::to_string(sl.sign));
    }
    letters.push_back(make_letter(g, sl.sign));
  }
  return FreeWord::from_letters(letters);
}

std::vector<NamedLetter> expand_word_literal(std::string_view text) {
  return LiteralParser(text).parse();
}

FreeWord parse_word(std::string_view text, std::string_view x_name, std::string_view h_name) {
  std::vector<Letter> letters;
  for (const auto& nl : expand_word_literal(text)) {
    int g;
    if (nl.generator == x_name) {
      g = 0;
    } else if (nl.generator == h_name) {
      g = 1;
    } else {
      throw WordSyntaxError(nl.column, "unknown generator '" + nl.generator + "'");
    }
    letters.push_back(make_letter(g, nl.sign));
  }
  return FreeWord::from_letters(letters);
}

CyclicHom CyclicHom::make(long long modulus, long long image_x, long long image_h) {
  if (modulus < 1) throw InvalidArgument("cyclic modulus must be positive");
  return CyclicHom{modulus, mod_floor(image_x, modulus), mod_floor(image_h, modulus)};
}

bool CyclicHom::surjective() const {
  return std::gcd(std::gcd(image_x, image_h), modulus) == 1;
}

long long CyclicHom::image(Letter l) const {
  long long v = letter_generator(l) == 0 ? image_x : image_h;
  return mod_floor(letter_sign(l) * v, modulus);
}

long long hom_image(const CyclicHom& f, std::span<const Letter> raw) {
  long long s = 0;
  for (Letter l : raw) s = (s + f.image(l)) % f.modulus;
  return s;
}

long long hom_image(const CyclicHom& f, const FreeWord& w) { return hom_image(f, w.letters()); }

GroupPresentation::GroupPresentation(std::vector<std::string> generators,
                                     const std::vector<std::string>& relator_literals)
    : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    for (std::size_t j = i + 1; j < generators_.size(); ++j) {
      if (generators_[i] == generators_[j]) {
        throw InvalidArgument("duplicate generator '" + generators_[i] + "'");
      }
    }
  }
  for (const auto& literal : relator_literals) {
    PresentationWord word;
    for (const auto& nl : expand_word_literal(literal)) {
      auto it = std::find(generators_.begin(), generators_.end(), nl.generator);
      if (it == generators_.end()) {
        throw WordSyntaxError(nl.column, "unknown generator '" + nl.generator + "'");
      }
      PresentationLetter pl{static_cast<std::size_t>(it - generators_.begin()), nl.sign};
      if (!word.empty() && word.back().generator == pl.generator && word.back().sign == -pl.sign) {
        word.pop_back();
      } else {
        word.push_back(pl);
      }
    }
    if (word.empty()) throw InvalidArgument("relator '" + literal + "' reduces to the identity");
    relators_.push_back(std::move(word));
  }
}

bool CyclicAssignment::surjective() const {
  long long g = modulus;
  for (long long v : images) g = std::gcd(g, v);
  return g == 1;
}

bool relators_killed(const CyclicAssignment& f, const GroupPresentation& p) {
  if (f.modulus < 1) throw InvalidArgument("cyclic modulus must be positive");
  if (f.images.size() != p.generators().size()) {
    throw InvalidArgument("assignment must give an image for every generator");
  }
  for (const auto& relator : p.relators()) {
    long long s = 0;
    for (const auto& l : relator) {
      s = mod_floor(s + l.sign * mod_floor(f.images[l.generator], f.modulus), f.modulus);
    }
    if (s != 0) return false;
  }
  return true;
}

GroupPresentation orbifold_presentation(int n) {
  if (n < 1) throw InvalidArgument("orbifold order must be positive");
  const std::string e = std::to_string(n);
  return GroupPresentation({"X", "H"}, {"H^" + e, "(H X H X^-2)^" + e});
}

}  // namespace tetrus
