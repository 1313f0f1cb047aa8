#pragma once

/**
 * @file arith.hpp
 * @brief Exact integer/rational aliases and certified dyadic enclosures.
 *
 * Every quantity the library decides on is either an exact rational or an
 * interval [lo, hi] of dyadic rationals that provably contains the real value.
 * Transcendental values (log2, sqrt) are obtained from MPFR with directed
 * rounding and then truncated outward to a fixed number of fractional bits.
 */

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace kll {

using Integer = mpz_class;
using Rational = mpq_class;

/// Fractional bits used for dyadic enclosures of transcendental values.
inline constexpr unsigned kDyadicBits = 64;

std::string to_string(const Integer& z);
/// "p/q" or "p" when the denominator is 1.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);
/// num/den in canonical form (GMP arithmetic requires it). Throws on a zero denominator.
Rational ratio(const Integer& num, const Integer& den);

Integer ipow(const Integer& base, unsigned long exp);
Rational rpow(const Rational& base, unsigned long exp);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Three-valued outcome of an inequality decided on an enclosure.
enum class Decision { True, False, Straddles };
std::string to_string(Decision d);

/// Closed interval of rationals with lo <= hi.
struct Interval {
    Rational lo;
    Rational hi;

    static Interval point(const Rational& v) { return {v, v}; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    Rational width() const { return hi - lo; }

    /// Sign of the enclosed value relative to zero.
    Decision positive() const;      // value > 0
    Decision nonpositive() const;   // value <= 0
    Decision at_least(const Rational& v) const;  // value >= v
    Decision at_most(const Rational& v) const;   // value <= v
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rational& s, const Interval& a);
Interval operator+(const Interval& a, const Rational& b);
Interval operator-(const Interval& a, const Rational& b);
Interval operator/(const Interval& a, const Rational& s);
Interval square(const Interval& a);

/// Outward-rounded dyadic enclosure of log2(x) for x > 0.
/// `bits` fractional bits on each endpoint; exact when x is a power of two.
Interval log2_enclosure(const Rational& x, unsigned bits = kDyadicBits);
/// Enclosure of the natural logarithm.
Interval ln_enclosure(const Rational& x, unsigned bits = kDyadicBits);
/// Outward-rounded enclosure of sqrt(x) for x >= 0.
Interval sqrt_enclosure(const Rational& x, unsigned bits = kDyadicBits);
/// Enclosure of 2^x for rational x.
Interval exp2_enclosure(const Rational& x, unsigned bits = kDyadicBits);

/// Approximate decimal rendering, used only in human-facing text.
double to_double(const Rational& q);

/// Enumeration caps. KLL_BUDGET in the environment overrides the defaults.
struct Budget {
    std::uint64_t max_index = 12;            // low-index enumeration
    std::uint64_t max_nodes = 10'000'000;    // coset-table search nodes
    std::uint64_t max_group_order = 10'000'000;  // closure enumeration
    std::uint64_t max_census_order = 10'000;     // subgroup census
    unsigned max_cheeger_vertices = 26;

    /// Defaults; KLL_BUDGET=<n> replaces the node and group-order caps with n.
    static Budget from_environment();
    /// Same replacement applied programmatically (the CLI's --budget flag).
    Budget with_cap(std::uint64_t cap) const;
};

}  // namespace kll
