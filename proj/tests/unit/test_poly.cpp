#include <doctest.h>

#include "kll/error.hpp"
#include "kll/poly.hpp"
#include "oracles.hpp"

#include <random>

using namespace kll;

TEST_CASE("qpoly arithmetic and division") {
    QPoly f = QPoly::from_ints({1, 0, -2, -1, 0, 1});
    QPoly g = QPoly::from_ints({-1, 1});
    auto [q, r] = divmod(f, g);
    CHECK(q * g + r == f);
    CHECK(r.degree() < 1);
    CHECK(r == QPoly::constant(f.eval(1)));
    CHECK(f.to_string() == "x^5 - x^3 - 2x^2 + 1");
}

TEST_CASE("extended gcd gives a Bezout identity") {
    QPoly a = QPoly::from_ints({-1, 0, 1});       // x^2 - 1
    QPoly b = QPoly::from_ints({-1, 0, 0, 1});    // x^3 - 1
    auto bz = extended_gcd(a, b);
    CHECK(bz.g == QPoly::from_ints({-1, 1}));
    CHECK(bz.s * a + bz.t * b == bz.g);
}

TEST_CASE("quadratic discriminants") {
    CHECK(discriminant(QPoly::from_ints({1, 0, 1})) == -4);
    CHECK(discriminant(QPoly::from_ints({-5, 0, 1})) == 20);
    CHECK(discriminant(QPoly::from_ints({3, 5, 2})) == 25 - 24);
}

TEST_CASE("resultant equals the product of a(root) for split polynomials") {
    // f = (x-1)(x-2)(x+3), a = x^2 + 1
    QPoly f = QPoly::from_ints({-1, 1}) * QPoly::from_ints({-2, 1}) * QPoly::from_ints({3, 1});
    QPoly a = QPoly::from_ints({1, 0, 1});
    CHECK(resultant(f, a) == Rational(2 * 5 * 10));
}

TEST_CASE("sturm counts match a rational grid over random polynomials") {
    std::mt19937_64 rng(7);
    int checked = 0;
    while (checked < 100) {
        std::uniform_int_distribution<int> deg(1, 6);
        QPoly f = testing::random_int_poly(rng, deg(rng), 6, false);
        if (gcd(f, f.derivative()).degree() > 0) continue;
        const Rational bound = cauchy_root_bound(f);
        const long n = floor(bound).get_si() + 1;
        const long steps_per_unit = 512;
        int grid = 0;
        int last = 0;
        for (long k = -n * steps_per_unit; k <= n * steps_per_unit; ++k) {
            const int s = sgn(f.eval(ratio(k, steps_per_unit)));
            if (s == 0) {
                ++grid;
                last = 0;
                continue;
            }
            if (last != 0 && s != last) ++grid;
            last = s;
        }
        CHECK(SturmSequence(f).count_real() == grid);
        ++checked;
    }
}

TEST_CASE("sturm interval counting") {
    // (x-1)(x-2)(x-3)
    QPoly f = QPoly::from_ints({-1, 1}) * QPoly::from_ints({-2, 1}) * QPoly::from_ints({-3, 1});
    SturmSequence s(f);
    CHECK(s.count_real() == 3);
    CHECK(s.count_in(Rational(0), Rational(2)) == 2);
    CHECK(s.count_in(Rational(1), Rational(2)) == 1);
    CHECK(s.count_at_most(Rational(5, 2)) == 2);
}

TEST_CASE("squarefree decomposition") {
    QPoly a = QPoly::from_ints({-1, 1}), b = QPoly::from_ints({2, 1});
    QPoly f = a * a * a * b;
    auto dec = squarefree_decomposition(f);
    REQUIRE(dec.size() == 2);
    CHECK(dec[0] == std::make_pair(b, 1));
    CHECK(dec[1] == std::make_pair(a, 3));
    CHECK(count_roots_at_most(dec, Rational(0)) == 1);
    CHECK(count_roots_at_most(dec, Rational(1)) == 4);
}

TEST_CASE("berlekamp agrees with trial division") {
    std::mt19937_64 rng(11);
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
        for (int trial = 0; trial < 40; ++trial) {
            std::uniform_int_distribution<int> deg(1, 7);
            QPoly f = testing::random_int_poly(rng, deg(rng), 20, true);
            FpPoly fp = FpPoly::reduce(f, p);
            auto fast = factor(fp);
            auto slow = testing::trial_factor(fp);
            CHECK(fast == slow);
            FpPoly prod(p, {1});
            for (const auto& [g, e] : fast)
                for (int i = 0; i < e; ++i) prod = prod * g;
            CHECK(prod == fp.monic());
        }
    }
}

TEST_CASE("factorization handles p-th powers") {
    // (x^2 + 1)^2 * x^3 over F_2 has derivative structure that needs p-th roots
    FpPoly g(2, {1, 0, 1});
    FpPoly f = g * g * FpPoly(2, {0, 0, 0, 1});
    auto fs = factor(f);
    REQUIRE(fs.size() == 2);
    CHECK(fs[0] == std::make_pair(FpPoly(2, {0, 1}), 3));
    CHECK(fs[1] == std::make_pair(FpPoly(2, {1, 1}), 4));
}

TEST_CASE("quintic mod 11") {
    FpPoly f = FpPoly::reduce(QPoly::from_ints({1, 0, -2, -1, 0, 1}), 11);
    auto fs = factor(f);
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].first.degree() == 2);
    CHECK(fs[1].first.degree() == 3);
}

TEST_CASE("modular helpers") {
    CHECK(mod_inverse(3, 7) == 5);
    CHECK_THROWS_AS(mod_inverse(4, 8), InvalidArgument);
    CHECK(mod_pow(2, 10, 1000) == 24);
    CHECK(is_prime(13));
    CHECK_FALSE(is_prime(91));
}
