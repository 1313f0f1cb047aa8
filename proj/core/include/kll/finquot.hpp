#pragma once

/**
 * @file finquot.hpp
 * @brief Finite quotients through 2x2 matrix groups over Z/m and F_q.
 *
 * Ring elements are small integers: residues in [0, m) for Z/m, and for
 * F_p[t]/(g) the base-p digits of the code are the polynomial coefficients.
 * A matrix is encoded as ((a*N + b)*N + c)*N + d with N the ring size.
 */

#include "kll/arith.hpp"
#include "kll/fpgroups.hpp"
#include "kll/numfield.hpp"
#include "kll/poly.hpp"
#include "kll/traceorders.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace kll {

class FiniteRing {
public:
    /// Z/m, m >= 2.
    static FiniteRing integers_mod(std::int64_t m);
    /// F_p[t]/(g) for g monic irreducible over F_p.
    static FiniteRing galois(const FpPoly& g);
    /// F_p when degree is 1, otherwise the extension given by the lowest irreducible of that degree.
    static FiniteRing field(std::int64_t p, int degree = 1);

    std::int64_t size() const { return size_; }
    std::int64_t characteristic() const { return p_; }
    int degree() const { return f_; }
    bool is_field() const { return field_; }
    /// Defining polynomial for extension rings (degree >= 1), empty for Z/m.
    const FpPoly& modulus_poly() const { return g_; }

    std::int64_t add(std::int64_t a, std::int64_t b) const;
    std::int64_t sub(std::int64_t a, std::int64_t b) const;
    std::int64_t neg(std::int64_t a) const;
    std::int64_t mul(std::int64_t a, std::int64_t b) const;
    std::int64_t from_int(std::int64_t v) const;
    /// Image of a polynomial in t (extension rings only).
    std::int64_t from_poly(const FpPoly& v) const;
    FpPoly to_poly(std::int64_t a) const;
    /// Additive generators: 1 for Z/m, 1, t, ..., t^(f-1) for F_q.
    std::vector<std::int64_t> additive_basis() const;

    std::string describe() const;
    friend bool operator==(const FiniteRing& x, const FiniteRing& y) {
        return x.p_ == y.p_ && x.f_ == y.f_ && x.size_ == y.size_ && x.g_ == y.g_;
    }

private:
    std::int64_t p_ = 2;      // characteristic, or m for Z/m
    int f_ = 1;
    std::int64_t size_ = 2;
    bool field_ = true;
    bool extension_ = false;
    FpPoly g_;
    std::vector<std::int32_t> mul_table_;  // extension fields of modest size
};

/// 2x2 matrix with ring-coded entries a b / c d.
struct Mat2F {
    std::array<std::int64_t, 4> e{};
    friend bool operator==(const Mat2F&, const Mat2F&) = default;
    friend auto operator<=>(const Mat2F&, const Mat2F&) = default;
};

/// SL(2, R) or PSL(2, R) = SL(2, R)/{+-I}; the ambient for one factor.
class MatrixSpace {
public:
    MatrixSpace(FiniteRing ring, bool projective);

    const FiniteRing& ring() const { return ring_; }
    bool projective() const { return projective_; }

    Mat2F make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) const;
    Mat2F identity() const;
    Mat2F mul(const Mat2F& x, const Mat2F& y) const;
    /// Inverse of a determinant-one matrix.
    Mat2F inverse(const Mat2F& x) const;
    std::int64_t det(const Mat2F& x) const;
    /// Representative of {x, -x} with the smaller code when projective, else x.
    Mat2F normalize(const Mat2F& x) const;
    std::uint64_t code(const Mat2F& x) const;
    Mat2F decode(std::uint64_t code) const;
    bool is_identity(const Mat2F& x) const { return normalize(x) == identity(); }
    /// Generators of the whole of SL(2, R): elementary matrices on an additive basis.
    std::vector<Mat2F> sl2_generators() const;
    /// |SL(2, R)| or |PSL(2, R)| for a field R = F_q.
    Integer field_group_order() const;
    std::string describe() const;

    friend bool operator==(const MatrixSpace& x, const MatrixSpace& y) {
        return x.ring_ == y.ring_ && x.projective_ == y.projective_;
    }

private:
    FiniteRing ring_;
    bool projective_;
};

/// Subgroup of one MatrixSpace stored as its sorted code list.
class FiniteMatrixGroup {
public:
    /// Closure of the generators. Throws BudgetExceeded past budget.max_group_order.
    FiniteMatrixGroup(MatrixSpace space, std::vector<Mat2F> generators, const Budget& budget = {});
    /// All of SL(2, R) or PSL(2, R).
    static FiniteMatrixGroup full(const MatrixSpace& space, const Budget& budget = {});

    const MatrixSpace& space() const { return space_; }
    const std::vector<Mat2F>& generators() const { return gens_; }
    std::uint64_t order() const { return codes_.size(); }
    const std::vector<std::uint64_t>& codes() const { return codes_; }
    Mat2F element(std::size_t i) const { return space_.decode(codes_[i]); }
    /// Position of a (normalized) element, or -1 if absent.
    std::int64_t index_of(const Mat2F& x) const;
    bool contains(const Mat2F& x) const { return index_of(x) >= 0; }
    /// tab[i] = index_of(element(i) * g).
    std::vector<std::uint32_t> right_multiplication(const Mat2F& g) const;

private:
    MatrixSpace space_;
    std::vector<Mat2F> gens_;
    std::vector<std::uint64_t> codes_;
};

// --------------------------------------------------------------------------
// Reduction of number-field matrices

struct ReductionResult {
    MatrixSpace space;
    std::vector<Mat2F> images;
};

/// Reduce entries through Z[theta] -> F_p[t]/(local_factor), theta -> t.
/// Throws DenominatorNotCoprime when a coefficient has p in its denominator,
/// InvalidArgument when an image fails to have determinant one.
ReductionResult reduce_mod_prime(const std::vector<Mat2>& gens, const PrimeIdeal& prime, bool projective = false);
/// Product of images along a word (generator k of the word is images[k]).
Mat2F evaluate_word(const MatrixSpace& space, const std::vector<Mat2F>& images, const Word& w);
/// Throws RelatorViolated naming the first relator with a nontrivial image.
void check_relators(const Presentation& pres, const MatrixSpace& space, const std::vector<Mat2F>& images);

// --------------------------------------------------------------------------
// Direct products

/// Element of a product of matrix spaces, one matrix per factor.
using ProductElement = std::vector<Mat2F>;

class ProductSpace {
public:
    explicit ProductSpace(std::vector<MatrixSpace> factors);
    /// PSL(2, p_1) x ... x PSL(2, p_n).
    static ProductSpace psl2_primes(const std::vector<std::int64_t>& primes);

    const std::vector<MatrixSpace>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }
    ProductElement identity() const;
    ProductElement mul(const ProductElement& x, const ProductElement& y) const;
    ProductElement inverse(const ProductElement& x) const;
    ProductElement normalize(const ProductElement& x) const;
    bool is_identity(const ProductElement& x) const;
    std::vector<std::uint64_t> key(const ProductElement& x) const;
    void check(const ProductElement& x) const;  // arity and determinant

private:
    std::vector<MatrixSpace> factors_;
};

/// Closure inside a product, for modest orders. Elements sorted by key.
std::vector<ProductElement> product_closure(const ProductSpace& space, const std::vector<ProductElement>& gens,
                                            const Budget& budget = {});

struct SurjectivityReport {
    std::vector<std::uint64_t> factor_orders;        // |G_i|
    std::vector<std::uint64_t> factor_image_orders;  // |pi_i(image)|
    std::vector<bool> factor_surjective;
    Integer product_order;
    std::uint64_t image_order = 0;
    bool onto = false;
    /// Characteristics distinct primes >= 5 and every factor PSL(2, p).
    bool hall_hypothesis = false;
};

/// Breadth-first closure of the subgroup generated by tuples inside the full
/// product of the factor groups. Throws BudgetExceeded when the product order
/// exceeds budget.max_group_order.
SurjectivityReport product_surjectivity(const ProductSpace& space, const std::vector<ProductElement>& gens,
                                        const Budget& budget = {});

struct NormalizerReport {
    int n = 0;
    std::uint64_t witness_order = 0;  // subgroup of single-slot A_i, B_i tuples
    Integer witness_quotient;         // witness_order / 4
    std::optional<Integer> normalizer_order;
    Integer quotient_order;           // exact |N(H)/H| when known, else the witness lower bound
    Integer bound;                    // 4^(n-1)
    bool exact = false;
    bool holds = false;
};

/// H = {1, A, B, AB} with A = (A_i), B = (B_i). Each A_i, B_i, A_i B_i must be
/// a nontrivial involution with A_i B_i = B_i A_i (InvalidArgument otherwise).
/// The exact normalizer is counted factor by factor over the six permutations
/// of H minus the identity, so it needs only the factor groups.
NormalizerReport normalizer_quotient_order(const ProductSpace& space, const ProductElement& a, const ProductElement& b,
                                           const Budget& budget = {});

/// Coset table of phi^{-1}(H): cosets are the right cosets Hx for x in the
/// image, with generators acting by right multiplication. `subgroup` must
/// list a subgroup (InvalidArgument otherwise). Throws RelatorViolated.
CosetTable pullback_cover_table(const Presentation& pres, const ProductSpace& space,
                                const std::vector<ProductElement>& images, const std::vector<ProductElement>& subgroup,
                                const Budget& budget = {});

/// Uniform element of a finite group stored as codes.
Mat2F random_element(const FiniteMatrixGroup& g, std::mt19937_64& rng);

}  // namespace kll
