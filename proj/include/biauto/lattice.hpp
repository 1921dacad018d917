#pragma once

// Exact integer linear algebra: row-style Hermite reduction, left kernels,
// Smith normal form with the column transform, and rational solves.

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

namespace biauto::lattice {

using Int = std::int64_t;
using Vec = std::vector<Int>;
using Matrix = std::vector<Vec>;  // row-major; all rows share one length
using Rational = boost::rational<Int>;

Int add(Int a, Int b);  // throws Resource on overflow
Int mul(Int a, Int b);
Int gcd(Int a, Int b);
Int lcm(Int a, Int b);
Int gcd(const Vec& v);

/// Floor-style modulus into [0, m).
Int mod(Int a, Int m);

bool is_zero(const Vec& v);

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
Vec primitive(const Vec& v);

/// Basis (in row echelon form, pivots positive) of the lattice spanned by the
/// rows. Zero rows are dropped.
Matrix hermite_basis(const Matrix& rows, std::size_t columns);

std::size_t rank(const Matrix& rows, std::size_t columns);

/// Basis of { c in Z^rows : c * M = 0 }.
Matrix left_kernel(const Matrix& m, std::size_t columns);

struct SmithForm {
  Vec diagonal;  // length min(rows, columns); non-negative, each divides the next nonzero
  Matrix column_transform;  // V, columns x columns, unimodular: U * M * V = diag
};

SmithForm smith(const Matrix& m, std::size_t columns);

/// Solves sum_j coeffs[j] * generators[j] = target over Q. Generators must be
/// linearly independent; returns nullopt when target is outside their span.
std::optional<std::vector<Rational>> solve_in_span(const Matrix& generators,
                                                   const Vec& target);

}  // namespace biauto::lattice
