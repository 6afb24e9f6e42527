#include "tetrus/amalgam.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>
#include <sstream>

#include "tetrus/tangle.hpp"

namespace tetrus {

namespace {

std::vector<Syllable> normalize(std::vector<Syllable> raw) {
  std::vector<Syllable> out;
  for (auto& s : raw) {
    if (s.word.is_identity()) continue;
    if (!out.empty() && out.back().side == s.side) {
      out.back().word = out.back().word * s.word;
      if (out.back().word.is_identity()) out.pop_back();
    } else {
      out.push_back(std::move(s));
    }
  }
  return out;
}

// Extended Euclid: returns g = gcd(a, b) >= 0 with u*a + v*b = g.
long long ext_gcd(long long a, long long b, long long& u, long long& v) {
  long long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    long long q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
    old_t -= q * t;
    std::swap(old_t, t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  u = old_s;
  v = old_t;
  return old_r;
}

long long image(const CyclicHom& f, const FreeWord& w) { return hom_image(f, w); }

}  // namespace

DoubledWord::DoubledWord(std::vector<Syllable> raw) : syllables_(normalize(std::move(raw))) {}

DoubledWord DoubledWord::single(Side side, FreeWord word) {
  return DoubledWord({Syllable{side, std::move(word)}});
}

DoubledWord DoubledWord::parse(std::string_view text) {
  std::vector<Syllable> raw;
  std::size_t i = 0;
  auto space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  for (;;) {
    space();
    if (i >= text.size()) break;
    Side side = Side::plain;
    if (text[i] == '~') {
      side = Side::mirror;
      ++i;
      space();
    }
    const std::size_t start = i;
    if (i < text.size() && text[i] == '(') {
      int depth = 0;
      for (; i < text.size(); ++i) {
        if (text[i] == '~') throw WordSyntaxError(i + 1, "'~' is not allowed inside parentheses");
        if (text[i] == '(') ++depth;
        if (text[i] == ')' && --depth == 0) {
          ++i;
          break;
        }
      }
      if (depth != 0) throw WordSyntaxError(start + 1, "missing ')'");
    } else if (i < text.size() && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    } else {
      throw WordSyntaxError(i + 1, i < text.size() ? "unexpected character in doubled word"
                                                   : "missing factor after '~'");
    }
    space();
    if (i < text.size() && text[i] == '^') {
      ++i;
      space();
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    }
    try {
      raw.push_back({side, parse_word(text.substr(start, i - start))});
    } catch (const WordSyntaxError& e) {
      throw WordSyntaxError(start + e.column(), e.what());
    }
  }
  return DoubledWord(std::move(raw));
}

DoubledWord DoubledWord::inverse() const {
  std::vector<Syllable> out;
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) {
    out.push_back({it->side, it->word.inverse()});
  }
  return DoubledWord(std::move(out));
}

DoubledWord operator*(const DoubledWord& a, const DoubledWord& b) {
  std::vector<Syllable> raw = a.syllables_;
  raw.insert(raw.end(), b.syllables_.begin(), b.syllables_.end());
  return DoubledWord(std::move(raw));
}

std::string DoubledWord::str() const {
  if (syllables_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < syllables_.size(); ++i) {
    if (i) os << ' ';
    const auto& s = syllables_[i];
    if (s.side == Side::mirror) os << '~';
    os << '(' << s.word.str() << ')';
  }
  return os.str();
}

DoubledWord mirror(const DoubledWord& w) {
  std::vector<Syllable> out;
  for (const auto& s : w.syllables()) out.push_back({other(s.side), s.word});
  return DoubledWord(std::move(out));
}

AmalgamContext::AmalgamContext(std::vector<FreeWord> lambda_generators)
    : generators_(std::move(lambda_generators)), lambda_(graph_from_generators(generators_)) {}

AmalgamContext::AmalgamContext(const AmalgamContext& other)
    : generators_(other.generators_), lambda_(other.lambda_) {}

AmalgamContext AmalgamContext::boundary_subgroup() {
  AmalgamContext ctx(tangle::lambda_generators());
  for (const auto& w : {tangle::meridian_h(), tangle::meridian_m()}) {
    if (!membership(ctx.lambda(), w)) throw InvariantViolation("meridian " + w.str() + " not in Lambda");
  }
  return ctx;
}

FreeWord AmalgamContext::representative(const FreeWord& w) const {
  {
    std::shared_lock lock(memo_mutex_);
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
  }
  FreeWord rep = coset_reduce(lambda_, w);
  std::unique_lock lock(memo_mutex_);
  memo_.try_emplace(w, rep);
  return rep;
}

std::size_t AmalgamContext::memo_size() const {
  std::shared_lock lock(memo_mutex_);
  return memo_.size();
}

DoubledWord NormalForm::reassemble() const {
  std::vector<Syllable> raw;
  raw.push_back({syllables.empty() ? Side::plain : syllables.front().side, lambda_part});
  raw.insert(raw.end(), syllables.begin(), syllables.end());
  return DoubledWord(std::move(raw));
}

std::string NormalForm::str() const {
  std::ostringstream os;
  os << '[' << lambda_part.str() << ']';
  for (const auto& s : syllables) os << ' ' << (s.side == Side::mirror ? "~" : "") << '(' << s.word.str() << ')';
  return os.str();
}

NormalForm normal_form(const AmalgamContext& ctx, const DoubledWord& w) {
  std::vector<Syllable> current = w.syllables();
  for (;;) {
    // Right-to-left sweep: u = s_i * carry = lambda * rep with rep a right
    // coset representative.
    std::vector<Syllable> reps(current.size());
    FreeWord carry;
    std::size_t collapsed = current.size();
    for (std::size_t k = current.size(); k-- > 0;) {
      FreeWord u = current[k].word * carry;
      FreeWord rep = ctx.representative(u);
      if (rep.is_identity()) {
        carry = u;
        collapsed = k;
        break;
      }
      reps[k] = {current[k].side, rep};
      carry = u * rep.inverse();
    }
    if (collapsed == current.size() || collapsed == 0) {
      NormalForm nf{carry, {}};
      for (std::size_t k = collapsed == 0 ? 1 : 0; k < current.size(); ++k) nf.syllables.push_back(reps[k]);
      return nf;
    }
    // Syllable `collapsed` lies in Lambda: absorb it into its left neighbour,
    // which then merges with the representative on its right.
    std::vector<Syllable> next(current.begin(), current.begin() + static_cast<std::ptrdiff_t>(collapsed));
    next.back().word = next.back().word * carry;
    next.insert(next.end(), reps.begin() + static_cast<std::ptrdiff_t>(collapsed + 1), reps.end());
    current = normalize(std::move(next));
  }
}

std::size_t syllable_length(const AmalgamContext& ctx, const DoubledWord& w) {
  return normal_form(ctx, w).syllables.size();
}

bool amalgam_equal(const AmalgamContext& ctx, const DoubledWord& a, const DoubledWord& b) {
  return normal_form(ctx, a) == normal_form(ctx, b);
}

long long hom_image(const EquivariantHom& f, const DoubledWord& w) {
  long long s = 0;
  for (const auto& syl : w.syllables()) s = (s + image(f.base, syl.word)) % f.base.modulus;
  return s;
}

std::vector<DoubledWord> kernel_decompose(const AmalgamContext& ctx, const EquivariantHom& f,
                                          const DoubledWord& w) {
  const long long n = f.base.modulus;
  if (hom_image(f, w) != 0) throw InvalidArgument("not in kernel");

  // An element z of Lambda with f(z) a unit, built by gcd-combining generators.
  FreeWord z;
  long long zv = 0;
  for (const auto& g : ctx.generators()) {
    if (std::gcd(zv, n) == 1) break;
    long long gv = image(f.base, g);
    long long u, v;
    ext_gcd(zv, gv, u, v);
    z = z.pow(u) * g.pow(v);
    zv = image(f.base, z);
  }
  long long inv_u, inv_v;
  if (ext_gcd(zv, n, inv_u, inv_v) != 1) {
    throw InvalidArgument("amalgam surjectivity hypothesis fails");
  }
  const long long z_inverse = mod_floor(inv_u, n);
  auto balancing = [&](long long target) { return z.pow(mod_floor(target * z_inverse, n)); };

  NormalForm nf = normal_form(ctx, w);
  std::vector<DoubledWord> factors;
  while (nf.syllables.size() > 1) {
    Syllable last = nf.syllables.back();
    nf.syllables.pop_back();
    const long long prefix = hom_image(f, nf.reassemble());
    FreeWord c0 = balancing(prefix);
    factors.push_back(DoubledWord::single(last.side, c0 * last.word));
    // The prefix times c0^-1 has one syllable fewer.
    nf.syllables.back().word = nf.syllables.back().word * c0.inverse();
  }
  DoubledWord head = nf.reassemble();
  if (!head.empty()) factors.push_back(head);
  std::reverse(factors.begin(), factors.end());
  if (factors.empty()) factors.push_back(DoubledWord());
  return factors;
}

}  // namespace tetrus
