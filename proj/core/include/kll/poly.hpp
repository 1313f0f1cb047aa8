#pragma once

/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over Q and over F_p.
 *
 * Coefficients are stored constant term first, which is also the on-disk
 * convention: [1, 0, -2, -1, 0, 1] is x^5 - x^3 - 2x^2 + 1.
 */

#include "kll/arith.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kll {

class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs);
    static QPoly from_integers(const std::vector<Integer>& coeffs);
    static QPoly from_ints(std::initializer_list<long> coeffs);
    static QPoly constant(const Rational& c);
    static QPoly monomial(const Rational& c, std::size_t degree);
    static QPoly x() { return monomial(Rational(1), 1); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool has_integer_coeffs() const;

    Rational eval(const Rational& x) const;
    QPoly derivative() const;
    QPoly monic() const;
    /// Divide through by the content so the result is primitive in Z[x] with positive leading coefficient.
    QPoly primitive() const;

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const Rational& s, const QPoly& a);
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Quotient and remainder of a by b (b nonzero).
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly operator%(const QPoly& a, const QPoly& b);
/// Monic gcd (zero if both inputs are zero).
QPoly gcd(const QPoly& a, const QPoly& b);
/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
struct Bezout { QPoly g, s, t; };
Bezout extended_gcd(const QPoly& a, const QPoly& b);

/// Resultant via the exact determinant of the Sylvester matrix.
Rational resultant(const QPoly& f, const QPoly& g);
/// (-1)^{n(n-1)/2} Res(f, f') / lc(f).
Rational discriminant(const QPoly& f);

/// Sturm-sequence real root counting for a polynomial with no repeated roots.
class SturmSequence {
public:
    explicit SturmSequence(const QPoly& squarefree);
    /// Number of distinct real roots in the half-open interval (a, b].
    int count_in(const Rational& a, const Rational& b) const;
    /// Number of distinct real roots r with r <= x.
    int count_at_most(const Rational& x) const;
    int count_real() const;

private:
    int sign_changes_at(const Rational& x) const;
    int sign_changes_at_infinity(bool positive) const;
    std::vector<QPoly> seq_;
};

/// f / gcd(f, f').
QPoly squarefree_part(const QPoly& f);
/// Squarefree decomposition over Q: f = c * prod_i g_i^i (pairs (g_i, i), g_i monic, nonconstant).
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& f);
/// Number of real roots counted with multiplicity that are <= x.
int count_roots_at_most(const std::vector<std::pair<QPoly, int>>& decomposition, const Rational& x);
/// Cauchy bound: every complex root has |r| < bound.
Rational cauchy_root_bound(const QPoly& f);

/// Disjoint half-open intervals (lo, hi], in increasing order, each holding
/// exactly one real root of the squarefree polynomial f; widths are <= max_width.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const QPoly& f, const Rational& max_width);
/// Sign of g at the unique root of squarefree f in (lo, hi], assuming g(root) != 0.
int sign_at_root(const QPoly& f, const QPoly& g, Rational lo, Rational hi);

// ---------------------------------------------------------------------------

/// Polynomial over F_p with p < 2^31, coefficients in [0, p).
class FpPoly {
public:
    FpPoly() = default;
    FpPoly(std::int64_t p, std::vector<std::int64_t> coeffs);
    /// Reduce an integer polynomial mod p (requires integral coefficients, or
    /// denominators coprime to p).
    static FpPoly reduce(const QPoly& f, std::int64_t p);

    std::int64_t modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<std::int64_t>& coeffs() const { return c_; }
    std::int64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::int64_t leading() const { return c_.empty() ? 0 : c_.back(); }

    FpPoly monic() const;
    FpPoly derivative() const;
    std::int64_t eval(std::int64_t x) const;
    /// Lift to Z[x] with coefficients in [0, p).
    QPoly lift() const;

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator<(const FpPoly& a, const FpPoly& b);

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::int64_t p_ = 2;
    std::vector<std::int64_t> c_;
};

std::int64_t mod_inverse(std::int64_t a, std::int64_t p);
std::int64_t mod_pow(std::int64_t a, std::uint64_t e, std::int64_t m);
bool is_prime(std::int64_t n);

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);
FpPoly gcd(const FpPoly& a, const FpPoly& b);
FpPoly powmod(const FpPoly& base, const Integer& exp, const FpPoly& mod);

/// Complete factorization of a nonzero polynomial over F_p into monic irreducibles
/// with multiplicities, sorted by (degree, coefficients). Squarefree decomposition
/// followed by Berlekamp's algorithm.
std::vector<std::pair<FpPoly, int>> factor(const FpPoly& f);
bool is_irreducible(const FpPoly& f);

}  // namespace kll
