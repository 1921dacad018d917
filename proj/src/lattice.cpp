#include "biauto/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "biauto/error.hpp"

namespace biauto::lattice {

Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::Resource, "integer overflow in lattice arithmetic");
  return r;
}

Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::Resource, "integer overflow in lattice arithmetic");
  return r;
}

Int gcd(Int a, Int b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return mul(std::abs(a) / gcd(a, b), std::abs(b));
}

Int gcd(const Vec& v) {
  Int g = 0;
  for (Int x : v) g = gcd(g, x);
  return g;
}

Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

Vec primitive(const Vec& v) {
  Int g = gcd(v);
  if (g <= 1) return v;
  Vec out(v);
  for (Int& x : out) x /= g;
  return out;
}

namespace {

// row[i] -= q * row[j], applied to both the matrix and an optional companion.
void axpy(Vec& target, const Vec& source, Int q) {
  for (std::size_t k = 0; k < target.size(); ++k) target[k] = add(target[k], -mul(q, source[k]));
}

// Integer row echelon reduction. Applies every row operation to `companion`
// as well (when non-null). Returns the number of nonzero rows, which are
// moved to the front.
std::size_t echelon(Matrix& a, std::size_t columns, Matrix* companion) {
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < columns && pivot_row < a.size(); ++col) {
    while (true) {
      // smallest nonzero |entry| at or below pivot_row
      std::size_t best = a.size();
      for (std::size_t r = pivot_row; r < a.size(); ++r) {
        if (a[r][col] != 0 && (best == a.size() || std::abs(a[r][col]) < std::abs(a[best][col]))) best = r;
      }
      if (best == a.size()) break;
      std::swap(a[pivot_row], a[best]);
      if (companion) std::swap((*companion)[pivot_row], (*companion)[best]);
      bool clean = true;
      for (std::size_t r = pivot_row + 1; r < a.size(); ++r) {
        if (a[r][col] == 0) continue;
        Int q = a[r][col] / a[pivot_row][col];
        axpy(a[r], a[pivot_row], q);
        if (companion) axpy((*companion)[r], (*companion)[pivot_row], q);
        if (a[r][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (a[pivot_row][col] == 0) continue;
    if (a[pivot_row][col] < 0) {
      for (Int& x : a[pivot_row]) x = -x;
      if (companion)
        for (Int& x : (*companion)[pivot_row]) x = -x;
    }
    // reduce entries above the pivot into [0, pivot)
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Int q = a[r][col] / a[pivot_row][col];
      if (mod(a[r][col], a[pivot_row][col]) != a[r][col] - q * a[pivot_row][col]) --q;
      if (q != 0) {
        axpy(a[r], a[pivot_row], q);
        if (companion) axpy((*companion)[r], (*companion)[pivot_row], q);
      }
    }
    ++pivot_row;
  }
  return pivot_row;
}

}  // namespace

Matrix hermite_basis(const Matrix& rows, std::size_t columns) {
  Matrix a(rows);
  std::size_t r = echelon(a, columns, nullptr);
  a.resize(r);
  return a;
}

std::size_t rank(const Matrix& rows, std::size_t columns) {
  Matrix a(rows);
  return echelon(a, columns, nullptr);
}

Matrix left_kernel(const Matrix& m, std::size_t columns) {
  Matrix a(m);
  Matrix id(m.size(), Vec(m.size(), 0));
  for (std::size_t i = 0; i < m.size(); ++i) id[i][i] = 1;
  std::size_t r = echelon(a, columns, &id);
  Matrix kernel(id.begin() + static_cast<std::ptrdiff_t>(r), id.end());
  return hermite_basis(kernel, m.size());
}

SmithForm smith(const Matrix& m, std::size_t columns) {
  Matrix a(m);
  const std::size_t rows = a.size();
  Matrix v(columns, Vec(columns, 0));
  for (std::size_t i = 0; i < columns; ++i) v[i][i] = 1;

  auto col_axpy = [&](std::size_t target, std::size_t source, Int q) {
    for (auto& row : a) row[target] = add(row[target], -mul(q, row[source]));
    for (auto& row : v) row[target] = add(row[target], -mul(q, row[source]));
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  };

  const std::size_t n = std::min(rows, columns);
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      std::size_t br = rows, bc = columns;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < columns; ++c)
          if (a[r][c] != 0 && (br == rows || std::abs(a[r][c]) < std::abs(a[br][bc]))) {
            br = r;
            bc = c;
          }
      if (br == rows) break;
      std::swap(a[t], a[br]);
      col_swap(t, bc);

      bool done = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a[r][t] == 0) continue;
        axpy(a[r], a[t], a[r][t] / a[t][t]);
        if (a[r][t] != 0) done = false;
      }
      for (std::size_t c = t + 1; c < columns; ++c) {
        if (a[t][c] == 0) continue;
        col_axpy(c, t, a[t][c] / a[t][t]);
        if (a[t][c] != 0) done = false;
      }
      if (!done) continue;
      // pivot must divide the remaining block
      bool divides = true;
      for (std::size_t r = t + 1; r < rows && divides; ++r)
        for (std::size_t c = t + 1; c < columns; ++c)
          if (a[r][c] % a[t][t] != 0) {
            for (std::size_t k = 0; k < columns; ++k) a[t][k] = add(a[t][k], a[r][k]);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a[t][t] < 0) a[t][t] = -a[t][t];  // row negation, V unaffected
  }

  SmithForm out;
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = a[i][i];
  out.column_transform = std::move(v);
  return out;
}

std::optional<std::vector<Rational>> solve_in_span(const Matrix& generators, const Vec& target) {
  const std::size_t l = generators.size();
  const std::size_t k = target.size();
  // augmented k x (l + 1) system, columns are generators
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(l + 1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < l; ++j) a[i][j] = Rational(generators[j].at(i));
    a[i][l] = Rational(target[i]);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < l && row < k; ++col) {
    std::size_t p = row;
    while (p < k && a[p][col].numerator() == 0) ++p;
    if (p == k) continue;
    std::swap(a[row], a[p]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == row || a[r][col].numerator() == 0) continue;
      Rational f = a[r][col] / a[row][col];
      for (std::size_t c = col; c <= l; ++c) a[r][c] -= f * a[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (pivot_col.size() != l) fail(ErrorKind::Precondition, "solve_in_span: generators are linearly dependent");
  for (std::size_t r = row; r < k; ++r)
    if (a[r][l].numerator() != 0) return std::nullopt;
  std::vector<Rational> out(l);
  for (std::size_t r = 0; r < l; ++r) out[pivot_col[r]] = a[r][l] / a[r][pivot_col[r]];
  return out;
}

}  // namespace biauto::lattice
