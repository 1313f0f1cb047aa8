#pragma once

/**
 * @file quatalg.hpp
 * @brief Quaternion algebras (a, b / k) and their ramification.
 *
 * Local symbols over Q_p are decided by a certified isotropy search for
 * z^2 = a x^2 + b y^2: a solution modulo p^(2j+1) at which some partial
 * derivative has valuation <= j lifts to a p-adic solution by Hensel's lemma.
 * After reducing a, b to valuation 0 or 1, j <= 1 (odd p) and j <= 2 (p = 2)
 * suffice, so the search works modulo p^3 and 2^5.
 */

#include "kll/numfield.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kll {

/// The real place, passed where a rational prime is expected.
inline constexpr std::int64_t kRealPlace = 0;

enum class LocalStatus { Ramified, Split, Undecided };
std::string to_string(LocalStatus s);

/// Whether (a, b / Q_p) is a division algebra; p == kRealPlace for R.
LocalStatus hilbert_symbol_qp(const Rational& a, const Rational& b, std::int64_t p);
/// Status of (a, b) with rational entries after base change to the completion at `prime`.
LocalStatus base_change_status(const Rational& a, const Rational& b, const PrimeIdeal& prime);

class QuaternionAlgebra {
public:
    QuaternionAlgebra(FieldElement a, FieldElement b);
    static QuaternionAlgebra over_q(const Rational& a, const Rational& b);

    const NumberField& base_field() const { return a_.field(); }
    const FieldElement& a() const { return a_; }
    const FieldElement& b() const { return b_; }

private:
    FieldElement a_, b_;
};

struct FinitePlaceStatus {
    PrimeIdeal prime;   // e = f = 0 when splitting data could not be computed
    LocalStatus status = LocalStatus::Undecided;
};

struct RamificationReport {
    int real_places = 0;
    int real_places_ramified = 0;
    std::vector<FinitePlaceStatus> finite;
    bool parity_consistent = true;

    int finite_ramified() const;
    int undecided() const;
};

/// Places above 2 and above primes dividing the norms of a and b are examined;
/// every other finite place splits.
RamificationReport ramification(const QuaternionAlgebra& algebra);

/// tau_n = 4 cos^2(2 pi / n) - 4 inside Q(cos 2 pi / n).
struct TauN {
    int n = 0;
    QPoly min_poly_2cos;        // minimal polynomial of 2cos(2 pi / n)
    NumberField field;          // Q[y]/(min_poly_2cos)
    FieldElement tau;           // y^2 - 4
    QPoly tau_min_poly;
};

/// Cyclotomic polynomial Phi_n.
QPoly cyclotomic_polynomial(int n);
/// Minimal polynomial of 2cos(2 pi / n), n >= 3; checked numerically against the root.
QPoly min_poly_2cos(int n);
TauN tau_n(int n);
/// Norm of tau_n from Q(cos 2 pi / n) to Q, as Res(m, y^2 - 4).
Rational tau_n_norm(int n);

struct DihedralReport {
    int n = 0;
    TauN tau;
    Rational norm{};
    bool is_unit = false;
    std::optional<std::pair<std::int64_t, int>> prime_power{};  // (p, t) with n = p^t
    /// 1: n not a prime power; 2: n = p^t != 4; 3: n = 4.
    int norm_case = 0;
    bool rule_applies = false;        // n odd, or even and > 4
    std::string rule_prediction{};    // "unit" or "norm p"
    bool rule_consistent = true;
    /// Rational primes dividing N(tau_n): the only ones that can carry finite ramification.
    std::vector<std::int64_t> candidate_primes{};
    std::string note{};
};

DihedralReport dihedral_ramification_analysis(int n);

struct ClozelResult {
    enum class Verdict { Satisfied, Violated, Undecided } verdict = Verdict::Satisfied;
    std::optional<PrimeIdeal> witness;
};
std::string to_string(ClozelResult::Verdict v);

/// Checks that no listed completion contains a quadratic extension of Q_p.
ClozelResult clozel_hypothesis(const NumberField& field, const std::vector<PrimeIdeal>& finite_ramification);

/// Prime factors of a nonzero integer in increasing order.
std::vector<std::int64_t> prime_factors(Integer n);

}  // namespace kll
