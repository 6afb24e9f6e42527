#include <algorithm>
#include <sstream>

#include "tetrus/abelian.hpp"

namespace tetrus {

namespace {

using boost::multiprecision::abs;

void swap_columns(BigMatrix& m, std::size_t i, std::size_t j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}

// column j += q * column i
void add_column(BigMatrix& m, std::size_t i, std::size_t j, const BigInt& q) {
  for (auto& row : m) row[j] += q * row[i];
}

void add_row(BigMatrix& m, std::size_t i, std::size_t j, const BigInt& q) {
  for (std::size_t c = 0; c < m[j].size(); ++c) m[j][c] += q * m[i][c];
}

}  // namespace

std::size_t IntegerMatrixNF::free_rank() const {
  return static_cast<std::size_t>(std::count(factors.begin(), factors.end(), BigInt(0)));
}

std::string IntegerMatrixNF::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? ", " : "") << factors[i];
  os << ']';
  return os.str();
}

SmithForm smith_normal_form(BigMatrix a, std::size_t columns) {
  const std::size_t rows = a.size();
  for (const auto& r : a) {
    if (r.size() != columns) throw InvalidArgument("ragged relation matrix");
  }
  BigMatrix v(columns, std::vector<BigInt>(columns, 0));
  for (std::size_t i = 0; i < columns; ++i) v[i][i] = 1;

  const std::size_t steps = std::min(rows, columns);
  for (std::size_t k = 0; k < steps; ++k) {
    for (;;) {
      // Pivot: smallest nonzero absolute value in the trailing block.
      std::size_t pr = rows, pc = columns;
      for (std::size_t r = k; r < rows; ++r) {
        for (std::size_t c = k; c < columns; ++c) {
          if (a[r][c] != 0 && (pr == rows || abs(a[r][c]) < abs(a[pr][pc]))) {
            pr = r;
            pc = c;
          }
        }
      }
      if (pr == rows) break;  // trailing block is zero
      std::swap(a[k], a[pr]);
      swap_columns(a, k, pc);
      swap_columns(v, k, pc);
      bool clean = true;
      for (std::size_t r = k + 1; r < rows; ++r) {
        BigInt q = a[r][k] / a[k][k];
        if (q != 0) add_row(a, k, r, -q);
        clean = clean && a[r][k] == 0;
      }
      for (std::size_t c = k + 1; c < columns; ++c) {
        BigInt q = a[k][c] / a[k][k];
        if (q != 0) {
          add_column(a, k, c, -q);
          add_column(v, k, c, -q);
        }
        clean = clean && a[k][c] == 0;
      }
      if (!clean) continue;
      // Divisibility: fold any row whose entries the pivot misses into row k.
      std::size_t bad = rows;
      for (std::size_t r = k + 1; r < rows && bad == rows; ++r) {
        for (std::size_t c = k + 1; c < columns; ++c) {
          if (a[r][c] % a[k][k] != 0) {
            bad = r;
            break;
          }
        }
      }
      if (bad == rows) break;
      add_row(a, bad, k, BigInt(1));
    }
  }
  SmithForm out;
  out.diagonal.assign(columns, 0);
  for (std::size_t k = 0; k < steps; ++k) {
    if (a[k][k] < 0) {
      a[k][k] = -a[k][k];
      for (auto& row : v) row[k] = -row[k];
    }
    out.diagonal[k] = a[k][k];
  }
  out.column_transform = std::move(v);
  return out;
}

IntegerMatrixNF invariant_factors(const BigMatrix& rows, std::size_t columns) {
  auto form = smith_normal_form(rows, columns);
  IntegerMatrixNF nf;
  for (const auto& d : form.diagonal) {
    if (d != 1) nf.factors.push_back(d);
  }
  return nf;
}

}  // namespace tetrus
