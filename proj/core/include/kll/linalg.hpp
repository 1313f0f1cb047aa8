#pragma once

/**
 * @file linalg.hpp
 * @brief Exact dense linear algebra over Q, Z and F_p.
 */

#include "kll/arith.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace kll {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;
using ZMatrix = std::vector<std::vector<Integer>>;
using FpMatrix = std::vector<std::vector<std::int64_t>>;

QMatrix identity_matrix(std::size_t n);
QMatrix multiply(const QMatrix& a, const QMatrix& b);
QVector multiply(const QMatrix& a, const QVector& v);
QMatrix transpose(const QMatrix& a);

Rational determinant(QMatrix m);
std::size_t rank(QMatrix m);
/// Some solution of A x = b, or nullopt when the system is inconsistent.
std::optional<QVector> solve(QMatrix a, QVector b);
/// Basis of the right nullspace { x : A x = 0 }, in reduced echelon form.
/// `columns` is needed when `a` has no rows.
std::vector<QVector> nullspace(QMatrix a, std::size_t columns);

/// Clear denominators and divide by the gcd; the first nonzero entry is made positive.
std::vector<Integer> primitive_integer_vector(const QVector& v);

/// Characteristic polynomial det(xI - M) by Faddeev-LeVerrier, constant term first.
QVector characteristic_polynomial(const QMatrix& m);

/// Rank over F_p; entries may be any integers.
std::size_t rank_mod_p(FpMatrix m, std::int64_t p);
/// Rank over F_p of an integer matrix.
std::size_t rank_mod_p(const ZMatrix& m, std::int64_t p);

/// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form.
std::vector<Integer> smith_invariants(ZMatrix m);

}  // namespace kll
