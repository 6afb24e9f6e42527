#pragma once

// Test-side reference computations. Nothing here calls into the library
// except to convert between its word type and plain strings, so agreement
// with the library is meaningful.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tetrus/word.hpp"

namespace oracle {

// Words as strings over "xXhH" (capital = inverse).
using Word = std::string;

inline char inverse_char(char c) {
  switch (c) {
    case 'x': return 'X';
    case 'X': return 'x';
    case 'h': return 'H';
    default: return 'h';
  }
}

inline Word reduce(const Word& w) {
  Word out;
  for (char c : w) {
    if (!out.empty() && out.back() == inverse_char(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

inline Word inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse_char(*it));
  return out;
}

inline Word power(const Word& w, int k) {
  Word out;
  const Word base = k < 0 ? inverse(w) : w;
  for (int i = 0; i < std::abs(k); ++i) out += base;
  return reduce(out);
}

inline Word from_library(const tetrus::FreeWord& w) {
  static const char names[] = {'x', 'X', 'h', 'H'};
  Word out;
  for (auto l : w.letters()) out.push_back(names[l]);
  return out;
}

inline tetrus::FreeWord to_library(const Word& w) {
  std::vector<tetrus::Letter> letters;
  for (char c : w) {
    letters.push_back(c == 'x' ? tetrus::kX : c == 'X' ? tetrus::kXInv : c == 'h' ? tetrus::kH : tetrus::kHInv);
  }
  return tetrus::FreeWord::from_letters(letters);
}

inline long long exponent_sum(const Word& w, char gen) {
  long long s = 0;
  for (char c : w) {
    if (c == gen) ++s;
    if (c == inverse_char(gen)) --s;
  }
  return s;
}

inline long long mod(long long a, long long n) { return ((a % n) + n) % n; }

// Meridians and the boundary subgroup, written out by hand.
inline const Word kMeridianH = "h";
inline const Word kMeridianM = "hxhXX";
inline const Word kCurveC = reduce("xhx" "H" "XHX");
inline std::vector<Word> lambda_generators() { return {kMeridianH, kMeridianM, kCurveC}; }
// Boundary loops h, c, m^-1 and the closing loop.
inline std::vector<Word> boundary_loops() {
  const Word m_inv = inverse(kMeridianM);
  return {kMeridianH, kCurveC, m_inv, inverse(reduce(kMeridianH + kCurveC + m_inv))};
}

// The index-2 subgroup of words with even total exponent. Its cosets are the
// parities 0 and 1 with transversal {1, x}; the non-tree edges (0,h), (1,x)
// and (1,h) give the free basis a = h x^-1, b = x^2, c = x h.
struct Gamma2Rewriter {
  // Exponent vector in (a, b, c) of a word of even total exponent, and the
  // parity state reached by a word in general.
  static std::array<long long, 3> rewrite(const Word& w, int* end_state = nullptr) {
    std::array<long long, 3> v{0, 0, 0};
    int s = 0;
    for (char c : w) {
      const bool positive = c == 'x' || c == 'h';
      const char g = positive ? c : inverse_char(c);
      const int source = positive ? s : 1 - s;
      int basis = -1;
      if (source == 0 && g == 'h') basis = 0;
      if (source == 1 && g == 'x') basis = 1;
      if (source == 1 && g == 'h') basis = 2;
      if (basis >= 0) v[static_cast<std::size_t>(basis)] += positive ? 1 : -1;
      s = 1 - s;
    }
    if (end_state) *end_state = s;
    return v;
  }
};

// Integer functional on (a, b, c), primitive, killing all relator vectors:
// found by brute force over a small box. Returns every primitive solution.
inline std::vector<std::array<long long, 3>> killing_functionals(const std::vector<std::array<long long, 3>>& rel,
                                                                  long long box) {
  std::vector<std::array<long long, 3>> out;
  for (long long p = -box; p <= box; ++p) {
    for (long long q = -box; q <= box; ++q) {
      for (long long r = -box; r <= box; ++r) {
        if (p == 0 && q == 0 && r == 0) continue;
        if (std::gcd(std::gcd(std::abs(p), std::abs(q)), std::abs(r)) != 1) continue;
        bool kills = true;
        for (const auto& v : rel) kills = kills && p * v[0] + q * v[1] + r * v[2] == 0;
        if (kills) out.push_back({p, q, r});
      }
    }
  }
  return out;
}

// Finite permutation action of F on tuples (parity, Z/6 value, Z/4 value)
// built from an explicit functional on the Gamma_2 basis. The stabilizer of
// the start tuple restricted to selected coordinates gives the subgroups of
// the tower.
struct TowerAction {
  std::array<long long, 3> functional;  // values of a, b, c in Z/6
  bool track6 = true;
  bool track4 = true;

  using State = std::array<long long, 3>;  // parity, value mod 6, value mod 4

  State step(State st, char c) const {
    const bool positive = c == 'x' || c == 'h';
    const char g = positive ? c : inverse_char(c);
    const long long source = positive ? st[0] : 1 - st[0];
    long long value = 0;
    if (source == 0 && g == 'h') value = functional[0];
    if (source == 1 && g == 'x') value = functional[1];
    if (source == 1 && g == 'h') value = functional[2];
    st[0] = 1 - st[0];
    if (track6) st[1] = mod(st[1] + (positive ? value : -value), 6);
    if (track4) st[2] = mod(st[2] + (positive ? 1 : -1), 4);
    return st;
  }

  State act(State st, const Word& w) const {
    for (char c : w) st = step(st, c);
    return st;
  }

  std::vector<State> states() const {
    std::set<State> seen{{0, 0, 0}};
    std::vector<State> queue{{0, 0, 0}};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (char c : std::string("xXhH")) {
        const State n = step(queue[i], c);
        if (seen.insert(n).second) queue.push_back(n);
      }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
  }

  bool contains(const Word& w) const { return act({0, 0, 0}, w) == State{0, 0, 0}; }
};

inline std::vector<std::size_t> cycle_lengths(const std::vector<TowerAction::State>& states, const TowerAction& a,
                                              const Word& w, const std::vector<TowerAction::State>& within) {
  std::set<TowerAction::State> todo(within.begin(), within.end());
  (void)states;
  std::vector<std::size_t> out;
  while (!todo.empty()) {
    const auto start = *todo.begin();
    std::size_t len = 0;
    auto cur = start;
    do {
      todo.erase(cur);
      cur = a.act(cur, w);
      ++len;
    } while (cur != start);
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Orbits of the group generated by `gens` on the reachable states.
inline std::vector<std::vector<TowerAction::State>> orbits(const TowerAction& a, const std::vector<Word>& gens) {
  const auto all = a.states();
  std::set<TowerAction::State> todo(all.begin(), all.end());
  std::vector<std::vector<TowerAction::State>> out;
  while (!todo.empty()) {
    std::vector<TowerAction::State> orbit{*todo.begin()};
    todo.erase(todo.begin());
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto& g : gens) {
        for (const Word& w : {g, inverse(g)}) {
          const auto n = a.act(orbit[i], w);
          if (todo.erase(n)) orbit.push_back(n);
        }
      }
    }
    out.push_back(orbit);
  }
  return out;
}

// Euler characteristic of the capped boundary surface over one orbit: the
// four-holed sphere capped to a sphere, branched along the four loops.
inline long long capped_boundary_euler(const TowerAction& a, const std::vector<TowerAction::State>& orbit) {
  const auto degree = static_cast<long long>(orbit.size());
  long long chi = 2 * degree;
  for (const auto& loop : boundary_loops()) {
    const auto cycles = cycle_lengths({}, a, loop, orbit);
    chi -= degree - static_cast<long long>(cycles.size());
  }
  return chi;
}

}  // namespace oracle
