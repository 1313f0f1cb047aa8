#pragma once

/**
 * @file traceorders.hpp
 * @brief 2x2 matrices over a number field and the order R_k[1, a, b, ab].
 */

#include "kll/numfield.hpp"

#include <array>
#include <string>
#include <vector>

namespace kll {

class Mat2 {
public:
    Mat2(FieldElement a, FieldElement b, FieldElement c, FieldElement d);
    static Mat2 identity(const NumberField& k);
    static Mat2 scalar(const FieldElement& s);
    static Mat2 from_rationals(const NumberField& k, const Rational& a, const Rational& b, const Rational& c, const Rational& d);

    const FieldElement& at(int i, int j) const { return e_[static_cast<std::size_t>(2 * i + j)]; }
    const NumberField& field() const { return e_[0].field(); }

    FieldElement det() const;
    FieldElement trace() const;
    Mat2 inverse() const;
    bool is_scalar() const;
    bool is_zero() const;

    friend Mat2 operator+(const Mat2& x, const Mat2& y);
    friend Mat2 operator-(const Mat2& x, const Mat2& y);
    friend Mat2 operator*(const Mat2& x, const Mat2& y);
    friend Mat2 operator*(const FieldElement& s, const Mat2& x);
    friend bool operator==(const Mat2& x, const Mat2& y) { return x.e_ == y.e_; }

    std::string to_string() const;

private:
    std::array<FieldElement, 4> e_;
};

/// x = s y for some nonzero field element s.
bool projectively_equal(const Mat2& x, const Mat2& y);
/// x^2 is a nonzero scalar and x is not.
bool projective_involution(const Mat2& x);

/// The six identities a + a^-1 = tr(a), a^2 = tr(a) a - 1, a^2 b = tr(a) ab - b,
/// aba = -tr(b) + tr(ab) a + b, b^-1 a^-1 = tr(b) a^-1 - b a^-1,
/// ba + ab = (tr(ab) - tr(a) tr(b)) + tr(b) a + tr(a) b. Throws NonUnimodular.
bool verify_trace_identities(const Mat2& a, const Mat2& b);

/// O = R_k[1, a, b, ab] with its closure certificate.
struct ElementaryOrder {
    Mat2 a, b;
    std::array<Mat2, 4> basis;  // 1, a, b, ab
    /// structure[4 i + j] = coefficients of basis[i] * basis[j] in the basis.
    std::vector<std::array<FieldElement, 4>> structure;
    bool all_integral = false;
};

/// Coordinates of m in a basis of M_2(k), or throws if the basis is degenerate.
std::array<FieldElement, 4> coordinates(const std::array<Mat2, 4>& basis, const Mat2& m);

/// Throws NonUnimodular, CommutingGenerators, NonIntegralTraces.
ElementaryOrder build_order(const Mat2& a, const Mat2& b);
/// True iff m lies in the order (coordinates are algebraic integers).
bool order_contains(const ElementaryOrder& order, const Mat2& m);
/// x O x^-1 = O.
bool normalizes(const ElementaryOrder& order, const Mat2& x);
/// tr[a, b] - 2 with [a, b] = a b a^-1 b^-1.
FieldElement order_discriminant(const ElementaryOrder& order);
FieldElement commutator_trace_minus_two(const Mat2& a, const Mat2& b);

struct JorgensenInvolution {
    Mat2 tau;
    bool trace_zero = false;
    bool square_scalar = false;
    bool inverts_a = false;
    bool inverts_b = false;
};

/// tau = ab - ba; throws CommonFixedPoint when det(tau) = 0.
JorgensenInvolution jorgensen_involution(const Mat2& a, const Mat2& b);

/// Throws RelationFailure if tau1 or tau2 is not a projective involution or one of
/// the four conjugation relations fails; returns false if <tau1, tau2> is not Klein four.
bool klein_four_relations(const Mat2& a, const Mat2& alpha, const Mat2& tau1, const Mat2& tau2);

}  // namespace kll
