#include "kll/arith.hpp"

#include "kll/error.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>

namespace kll {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw InvalidArgument("not a rational number: '" + s + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw InvalidArgument("zero denominator in '" + s + "'");
    return q;
}

Rational ratio(const Integer& num, const Integer& den) {
    if (den == 0) throw InvalidArgument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Integer ipow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Rational rpow(const Rational& base, unsigned long exp) {
    Rational r(ipow(base.get_num(), exp), ipow(base.get_den(), exp));
    r.canonicalize();
    return r;
}

Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::string to_string(Decision d) {
    switch (d) {
        case Decision::True: return "true";
        case Decision::False: return "false";
        case Decision::Straddles: return "straddles";
    }
    return "?";
}

Decision Interval::positive() const {
    if (lo > 0) return Decision::True;
    if (hi <= 0) return Decision::False;
    return Decision::Straddles;
}

Decision Interval::nonpositive() const {
    if (hi <= 0) return Decision::True;
    if (lo > 0) return Decision::False;
    return Decision::Straddles;
}

Decision Interval::at_least(const Rational& v) const {
    if (lo >= v) return Decision::True;
    if (hi < v) return Decision::False;
    return Decision::Straddles;
}

Decision Interval::at_most(const Rational& v) const {
    if (hi <= v) return Decision::True;
    if (lo > v) return Decision::False;
    return Decision::Straddles;
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
Interval operator+(const Interval& a, const Rational& b) { return {a.lo + b, a.hi + b}; }
Interval operator-(const Interval& a, const Rational& b) { return {a.lo - b, a.hi - b}; }

Interval operator*(const Interval& a, const Interval& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Interval operator*(const Rational& s, const Interval& a) {
    if (s >= 0) return {s * a.lo, s * a.hi};
    return {s * a.hi, s * a.lo};
}

Interval operator/(const Interval& a, const Rational& s) {
    if (s == 0) throw InvalidArgument("interval division by zero");
    return (Rational(1) / s) * a;
}

Interval square(const Interval& a) {
    Rational l2 = a.lo * a.lo, h2 = a.hi * a.hi;
    if (a.lo >= 0) return {l2, h2};
    if (a.hi <= 0) return {h2, l2};
    return {Rational(0), std::max(l2, h2)};
}

namespace {

// RAII holder for an mpfr_t.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

// Dyadic rational with `bits` fractional bits, rounded in direction `rnd`.
Rational to_dyadic(mpfr_ptr v, unsigned bits, mpfr_rnd_t rnd) {
    Mpfr scaled(mpfr_get_prec(v) + bits + 8);
    mpfr_mul_2ui(scaled.get(), v, bits, MPFR_RNDN);  // exact: precision suffices
    Integer z;
    mpfr_get_z(z.get_mpz_t(), scaled.get(), rnd);
    Rational q(z, ipow(Integer(2), bits));
    q.canonicalize();
    return q;
}

using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

// Enclosure of a monotone increasing function applied to a rational.
Interval monotone_enclosure(const Rational& x, unsigned bits, UnaryFn fn) {
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits) + 64;
    Mpfr xl(prec), xh(prec), yl(prec), yh(prec);
    mpfr_set_q(xl.get(), x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(xh.get(), x.get_mpq_t(), MPFR_RNDU);
    fn(yl.get(), xl.get(), MPFR_RNDD);
    fn(yh.get(), xh.get(), MPFR_RNDU);
    return {to_dyadic(yl.get(), bits, MPFR_RNDD), to_dyadic(yh.get(), bits, MPFR_RNDU)};
}

}  // namespace

Interval log2_enclosure(const Rational& x, unsigned bits) {
    if (x <= 0) throw InvalidArgument("log2 of non-positive value " + to_string(x));
    return monotone_enclosure(x, bits, mpfr_log2);
}

Interval ln_enclosure(const Rational& x, unsigned bits) {
    if (x <= 0) throw InvalidArgument("log of non-positive value " + to_string(x));
    return monotone_enclosure(x, bits, mpfr_log);
}

Interval sqrt_enclosure(const Rational& x, unsigned bits) {
    if (x < 0) throw InvalidArgument("sqrt of negative value " + to_string(x));
    return monotone_enclosure(x, bits, mpfr_sqrt);
}

Interval exp2_enclosure(const Rational& x, unsigned bits) {
    return monotone_enclosure(x, bits, mpfr_exp2);
}

double to_double(const Rational& q) { return q.get_d(); }

Budget Budget::from_environment() {
    Budget b;
    if (const char* env = std::getenv("KLL_BUDGET"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long cap = std::strtoull(env, &end, 10);
        if (end != nullptr && *end == '\0' && cap > 0) return b.with_cap(cap);
    }
    return b;
}

Budget Budget::with_cap(std::uint64_t cap) const {
    Budget b = *this;
    b.max_nodes = cap;
    b.max_group_order = cap;
    return b;
}

}  // namespace kll
