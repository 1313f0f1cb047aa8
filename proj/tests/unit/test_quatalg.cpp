#include <doctest.h>

#include "kll/error.hpp"
#include "kll/quatalg.hpp"

#include <random>

using namespace kll;

namespace {

// Closed-form Hilbert symbol (a, b)_p in {+1, -1} for nonzero integers.
int serre_symbol(long a, long b, long p) {
    auto split = [p](long x, int& v) {
        v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return x;
    };
    int alpha = 0, beta = 0;
    long u = split(a, alpha), w = split(b, beta);
    auto legendre = [p](long x) {
        long r = ((x % p) + p) % p;
        return mod_pow(r, static_cast<std::uint64_t>((p - 1) / 2), p) == 1 ? 1 : -1;
    };
    if (p != 2) {
        int s = ((alpha * beta) % 2 == 1 && ((p - 1) / 2) % 2 == 1) ? -1 : 1;
        if (beta % 2 == 1) s *= legendre(u);
        if (alpha % 2 == 1) s *= legendre(w);
        return s;
    }
    auto eps = [](long x) { return static_cast<int>((((x % 8) + 8) % 8 - 1) / 2 % 2); };
    auto omega = [](long x) {
        long r = ((x % 8) + 8) % 8;
        return static_cast<int>(((r * r - 1) / 8) % 2);
    };
    int e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
    return e % 2 == 0 ? 1 : -1;
}

std::vector<std::int64_t> primes_upto(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p <= n; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

}  // namespace

TEST_CASE("worked examples for the local symbol") {
    CHECK(hilbert_symbol_qp(-1, -1, 2) == LocalStatus::Ramified);
    CHECK(hilbert_symbol_qp(-1, -1, 7) == LocalStatus::Split);
    CHECK(hilbert_symbol_qp(-1, -1, kRealPlace) == LocalStatus::Ramified);
    for (long b : {-7L, -1L, 2L, 3L, 10L})
        for (std::int64_t p : {2, 3, 5, 7})
            CHECK(hilbert_symbol_qp(1, b, p) == LocalStatus::Split);
}

TEST_CASE("x^2 + y^2 + z^2 has no primitive zero mod 8") {
    int count = 0;
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y)
            for (int z = 0; z < 8; ++z)
                if ((x % 2 || y % 2 || z % 2) && (x * x + y * y + z * z) % 8 == 0) ++count;
    CHECK(count == 0);
}

TEST_CASE("isotropy search agrees with the closed form") {
    for (long a = -30; a <= 30; ++a) {
        if (a == 0) continue;
        for (long b = -30; b <= 30; ++b) {
            if (b == 0) continue;
            for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
                const bool ramified = serre_symbol(a, b, p) == -1;
                CHECK_MESSAGE((hilbert_symbol_qp(a, b, p) == LocalStatus::Ramified) == ramified,
                              "a=" << a << " b=" << b << " p=" << p);
            }
        }
    }
}

TEST_CASE("unramified criterion") {
    for (long a = -12; a <= 12; ++a)
        for (long b = -12; b <= 12; ++b) {
            if (a == 0 || b == 0) continue;
            for (std::int64_t p : primes_upto(60)) {
                if ((2 * a * b) % p == 0) continue;
                CHECK(hilbert_symbol_qp(a, b, p) == LocalStatus::Split);
            }
        }
}

TEST_CASE("square-class invariance, including rational entries") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-40, 40);
    for (int trial = 0; trial < 200; ++trial) {
        long a = d(rng), b = d(rng), t = d(rng), s = d(rng), q = d(rng);
        if (a == 0 || b == 0 || t == 0 || s == 0 || q == 0) continue;
        const Rational at = Rational(a * t * t) / Rational(q * q), bs = Rational(b) * Rational(s * s);
        for (std::int64_t p : {2, 3, 5, 7, 13})
            CHECK(hilbert_symbol_qp(a, b, p) == hilbert_symbol_qp(at, bs, p));
    }
    // (-4, tau) and (-1, tau) coincide
    for (long tau : {-3L, -5L, 5L, -2L, 7L})
        for (std::int64_t p : {2, 3, 5, 7})
            CHECK(hilbert_symbol_qp(-4, tau, p) == hilbert_symbol_qp(-1, tau, p));
}

TEST_CASE("parity over random symbols supported below 50") {
    std::mt19937_64 rng(9);
    const auto small = primes_upto(47);
    std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
    std::uniform_int_distribution<int> count(0, 2), coin(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        Integer a(1), b(1);
        for (int i = count(rng); i > 0; --i) a *= static_cast<long>(small[pick(rng)]);
        for (int i = count(rng); i > 0; --i) b *= static_cast<long>(small[pick(rng)]);
        if (coin(rng)) a = -a;
        if (coin(rng)) b = -b;
        int ramified = hilbert_symbol_qp(a, b, kRealPlace) == LocalStatus::Ramified ? 1 : 0;
        for (auto p : primes_upto(200))
            if (hilbert_symbol_qp(a, b, p) == LocalStatus::Ramified) ++ramified;
        for (auto p : primes_upto(500))
            if (p > 200) CHECK(hilbert_symbol_qp(a, b, p) == LocalStatus::Split);
        CHECK(ramified % 2 == 0);
        auto rep = ramification(QuaternionAlgebra::over_q(a, b));
        CHECK(rep.parity_consistent);
        CHECK(rep.undecided() == 0);
        CHECK(rep.real_places_ramified + rep.finite_ramified() == ramified);
    }
}

TEST_CASE("base change by even local degree splits") {
    PrimeIdeal p2e{2, 2, 1, FpPoly(2, {})};
    PrimeIdeal p2o{2, 1, 1, FpPoly(2, {})};
    PrimeIdeal p5{5, 1, 2, FpPoly(5, {})};
    CHECK(base_change_status(-1, -1, p2e) == LocalStatus::Split);
    CHECK(base_change_status(-1, -1, p2o) == LocalStatus::Ramified);
    CHECK(base_change_status(-1, -1, p5) == LocalStatus::Split);
}

TEST_CASE("ramification over a number field") {
    // (-1, -1) over Q(sqrt 2): both real places ramify, the dyadic place has degree 2.
    NumberField k(QPoly::from_ints({-2, 0, 1}));
    auto rep = ramification(QuaternionAlgebra(FieldElement::from_rational(k, -1), FieldElement::from_rational(k, -1)));
    CHECK(rep.real_places == 2);
    CHECK(rep.real_places_ramified == 2);
    CHECK(rep.finite_ramified() == 0);
    CHECK(rep.parity_consistent);
    // Irrational entry: signs at the two real embeddings of sqrt 2.
    FieldElement t = FieldElement::generator(k);
    auto rep2 = ramification(QuaternionAlgebra(t, FieldElement::from_rational(k, -1)));
    CHECK(rep2.real_places_ramified == 1);
}

TEST_CASE("minimal polynomials of 2cos(2pi/n)") {
    CHECK(min_poly_2cos(3) == QPoly::from_ints({1, 1}));
    CHECK(min_poly_2cos(4) == QPoly::from_ints({0, 1}));
    CHECK(min_poly_2cos(5) == QPoly::from_ints({-1, 1, 1}));
    CHECK(min_poly_2cos(7) == QPoly::from_ints({-1, -2, 1, 1}));
    CHECK(min_poly_2cos(8) == QPoly::from_ints({-2, 0, 1}));
    CHECK(min_poly_2cos(9) == QPoly::from_ints({1, -3, 0, 1}));
    CHECK(min_poly_2cos(20) == QPoly::from_ints({5, 0, -5, 0, 1}));
    for (int n = 3; n <= 40; ++n) {
        int phi = 0;
        for (int k = 1; k <= n; ++k) phi += std::gcd(k, n) == 1 ? 1 : 0;
        CHECK(min_poly_2cos(n).degree() == phi / 2);
    }
}

TEST_CASE("tau_n values and norms") {
    CHECK(tau_n(4).tau.rational_value() == -4);
    CHECK(tau_n(3).tau.rational_value() == -3);
    CHECK(tau_n_norm(4) == -4);
    CHECK(abs(tau_n_norm(5)) == 5);
    CHECK(tau_n(5).tau.norm() == tau_n_norm(5));
    CHECK(abs(tau_n_norm(12)) == 1);
    for (int n : {3, 5, 7, 9}) {
        Rational p = n == 9 ? 3 : n;
        CHECK(abs(tau_n_norm(n)) == p);
    }
    for (int n : {12, 15, 20}) CHECK(abs(tau_n_norm(n)) == 1);
    // dyadic prime powers give a power of 2
    CHECK(abs(tau_n_norm(8)) == 4);
    for (int n = 3; n <= 30; ++n) CHECK(tau_n(n).tau.norm() == tau_n_norm(n));
}

TEST_CASE("dihedral analysis") {
    auto r4 = dihedral_ramification_analysis(4);
    CHECK(r4.norm_case == 3);
    CHECK(r4.candidate_primes == std::vector<std::int64_t>{2});
    auto r15 = dihedral_ramification_analysis(15);
    CHECK(r15.is_unit);
    CHECK(r15.norm_case == 1);
    CHECK(r15.candidate_primes.empty());
    CHECK(r15.rule_consistent);
    auto r6 = dihedral_ramification_analysis(6);
    CHECK_FALSE(r6.rule_consistent);
    CHECK(r6.candidate_primes == std::vector<std::int64_t>{3});
    auto r10 = dihedral_ramification_analysis(10);
    CHECK_FALSE(r10.rule_consistent);
    CHECK(r10.candidate_primes == std::vector<std::int64_t>{5});
    auto r7 = dihedral_ramification_analysis(7);
    CHECK(r7.norm_case == 2);
    CHECK(r7.rule_consistent);
    CHECK(r7.candidate_primes == std::vector<std::int64_t>{7});
}

TEST_CASE("clozel hypothesis") {
    NumberField quintic(QPoly::from_ints({1, 0, -2, -1, 0, 1}));
    std::vector<PrimeIdeal> ram;
    for (const auto& pr : split_prime(quintic, 11))
        if (pr.residue_degree == 2) ram.push_back(pr);
    auto v = clozel_hypothesis(quintic, ram);
    CHECK(v.verdict == ClozelResult::Verdict::Violated);
    REQUIRE(v.witness);
    CHECK(v.witness->norm() == 121);
    CHECK(clozel_hypothesis(quintic, {}).verdict == ClozelResult::Verdict::Satisfied);
    NumberField g(QPoly::from_ints({1, 0, 1}));
    auto above3 = split_prime(g, 3);
    // x^2 + 1 is inert at 3 (f = 2), so use the split prime 5 for the degree-1 example
    CHECK(above3.front().residue_degree == 2);
    auto above5 = split_prime(g, 5);
    CHECK(clozel_hypothesis(g, {above5.front()}).verdict == ClozelResult::Verdict::Satisfied);
    PrimeIdeal dyadic = split_prime(g, 2).front();
    CHECK(clozel_hypothesis(g, {dyadic}).verdict == ClozelResult::Verdict::Undecided);
}
