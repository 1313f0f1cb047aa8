#pragma once

/**
 * @file numfield.hpp
 * @brief Number fields Q[x]/(f) given by a monic integer polynomial.
 *
 * The maximal order is never computed. Prime splitting is read off the
 * factorization of f mod p, which is valid whenever Z[x]/(f) is p-maximal;
 * that condition is certified by Dedekind's criterion before splitting.
 */

#include "kll/arith.hpp"
#include "kll/poly.hpp"

#include <memory>
#include <string>
#include <vector>

namespace kll {

struct Signature {
    int r1 = 0;
    int r2 = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// How irreducibility of the defining polynomial was established.
struct IrreducibilityCertificate {
    bool verified = false;
    /// "degree-1", "rational-root", "mod-p:<p>", "degree-patterns:<p1,p2,...>" or "unverified".
    std::string method;
};

class NumberField {
public:
    /// Throws InvalidArgument if f is not monic with integer coefficients or has
    /// degree < 1, ReduciblePolynomial if a factorization is detected.
    explicit NumberField(const QPoly& min_poly);
    static NumberField from_coefficients(const std::vector<Integer>& constant_first);

    const QPoly& min_poly() const { return data_->f; }
    int degree() const { return data_->f.degree(); }
    const Signature& signature() const { return data_->sig; }
    const IrreducibilityCertificate& irreducibility() const { return data_->cert; }
    const Integer& poly_discriminant() const { return data_->disc; }

    friend bool operator==(const NumberField& a, const NumberField& b) {
        return a.data_ == b.data_ || a.data_->f == b.data_->f;
    }

private:
    struct Data {
        QPoly f;
        Signature sig;
        IrreducibilityCertificate cert;
        Integer disc;
    };
    std::shared_ptr<const Data> data_;
};

Signature signature(const NumberField& field);
Integer poly_discriminant(const NumberField& field);

struct PrimeIdeal {
    std::int64_t rational_prime = 0;
    int residue_degree = 1;       // f
    int ramification_index = 1;   // e
    FpPoly local_factor;

    Integer norm() const { return ipow(Integer(static_cast<long>(rational_prime)), static_cast<unsigned long>(residue_degree)); }
    int local_degree() const { return residue_degree * ramification_index; }
};

/// Primes of the field above p. Throws NonMonogenicPrime when p^2 | disc and
/// Dedekind's criterion shows Z[theta] is not p-maximal.
std::vector<PrimeIdeal> split_prime(const NumberField& field, std::int64_t p);
/// True when Z[theta] is p-maximal (Dedekind's criterion).
bool dedekind_p_maximal(const QPoly& f, std::int64_t p);

enum class LocalQuadratic { Contains, DoesNotContain, Undecided };
std::string to_string(LocalQuadratic v);
LocalQuadratic local_quadratic_subextension(const PrimeIdeal& prime);

/// Element of a number field in the power basis.
class FieldElement {
public:
    FieldElement(NumberField field, std::vector<Rational> coeffs);
    static FieldElement from_rational(const NumberField& field, const Rational& q);
    static FieldElement generator(const NumberField& field);
    static FieldElement from_poly(const NumberField& field, const QPoly& p);

    const NumberField& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    QPoly as_poly() const { return QPoly(c_); }
    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;  // requires is_rational()

    FieldElement operator-() const;
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const Rational& s, const FieldElement& a);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.field_ == b.field_ && a.c_ == b.c_; }
    FieldElement inverse() const;

    /// Matrix of multiplication by this element on the power basis (columns are images).
    std::vector<std::vector<Rational>> multiplication_matrix() const;
    /// det of the multiplication matrix.
    Rational norm() const;
    /// Res(f, a(x)) for the monic defining polynomial f; equals norm().
    Rational norm_by_resultant() const;
    Rational trace() const;
    QPoly characteristic_polynomial() const;
    QPoly minimal_polynomial() const;
    /// Algebraic integer iff the characteristic polynomial has integer coefficients.
    bool is_integral() const;

    std::string to_string() const;

private:
    NumberField field_;
    std::vector<Rational> c_;
};

}  // namespace kll
