#include <doctest.h>

#include "kll/error.hpp"
#include "kll/finquot.hpp"
#include "kll/fpgroups.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace kll;

namespace {

// Count det-one matrices by brute force over the ring.
std::uint64_t brute_sl2(const FiniteRing& r) {
    const std::int64_t n = r.size();
    std::uint64_t count = 0;
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b)
            for (std::int64_t c = 0; c < n; ++c)
                for (std::int64_t d = 0; d < n; ++d)
                    if (r.sub(r.mul(a, d), r.mul(b, c)) == 1) ++count;
    return count;
}

ProductElement pe(std::initializer_list<Mat2F> m) { return ProductElement(m); }

}  // namespace

TEST_CASE("orders of SL(2,p) and PSL(2,p) by closure") {
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
        const Integer sl = Integer(static_cast<long>(p)) * (p * p - 1);
        const Integer psl = p == 2 ? sl : Integer(sl / 2);
        CHECK(FiniteMatrixGroup::full(MatrixSpace(FiniteRing::field(p), false)).order() == sl.get_ui());
        CHECK(FiniteMatrixGroup::full(MatrixSpace(FiniteRing::field(p), true)).order() == psl.get_ui());
        CHECK(MatrixSpace(FiniteRing::field(p), true).field_group_order() == psl);
    }
}

TEST_CASE("closure agrees with brute-force determinant counts") {
    for (std::int64_t m : {2, 3, 4, 6, 8, 9, 10, 12})
        CHECK(FiniteMatrixGroup::full(MatrixSpace(FiniteRing::integers_mod(m), false)).order() ==
              brute_sl2(FiniteRing::integers_mod(m)));
    for (auto [p, f] : {std::pair{2, 2}, {2, 3}, {3, 2}, {5, 2}}) {
        const FiniteRing r = FiniteRing::field(p, f);
        CHECK(r.size() == static_cast<std::int64_t>(std::pow(p, f)));
        CHECK(FiniteMatrixGroup::full(MatrixSpace(r, false)).order() == brute_sl2(r));
    }
}

TEST_CASE("extension field arithmetic against polynomial arithmetic") {
    const FiniteRing r = FiniteRing::field(3, 2);
    const FpPoly g = r.modulus_poly();
    for (std::int64_t a = 0; a < 9; ++a)
        for (std::int64_t b = 0; b < 9; ++b) {
            CHECK(r.to_poly(r.mul(a, b)) == (r.to_poly(a) * r.to_poly(b)) % g);
            CHECK(r.to_poly(r.add(a, b)) == r.to_poly(a) + r.to_poly(b));
        }
    // every nonzero element has an inverse
    for (std::int64_t a = 1; a < 9; ++a) {
        int found = 0;
        for (std::int64_t b = 1; b < 9; ++b) found += r.mul(a, b) == 1;
        CHECK(found == 1);
    }
}

TEST_CASE("projective normalization is canonical") {
    MatrixSpace s(FiniteRing::field(7), true);
    const FiniteMatrixGroup g = FiniteMatrixGroup::full(s);
    for (std::size_t i = 0; i < g.order(); i += 7) {
        const Mat2F x = g.element(i);
        const Mat2F neg = s.make(-x.e[0], -x.e[1], -x.e[2], -x.e[3]);
        CHECK(neg == x);
        CHECK(s.mul(x, s.inverse(x)) == s.identity());
    }
    CHECK(s.make(-1, 0, 0, -1) == s.identity());
}

TEST_CASE("reduction mod a prime") {
    const NumberField q(QPoly::from_ints({0, 1}));
    const Mat2 u = Mat2::from_rationals(q, 1, 1, 0, 1), l = Mat2::from_rationals(q, 1, 0, 1, 1);
    const PrimeIdeal p5 = split_prime(q, 5).at(0);
    const ReductionResult red = reduce_mod_prime({u, l}, p5);
    CHECK(red.space.ring().size() == 5);
    CHECK(FiniteMatrixGroup(red.space, red.images).order() == 120);

    const ReductionResult id = reduce_mod_prime({Mat2::identity(q)}, split_prime(q, 11).at(0));
    CHECK(id.images[0] == id.space.identity());

    const Mat2 frac = Mat2::from_rationals(q, 1, ratio(1, 5), 0, 1);
    CHECK_THROWS_AS(reduce_mod_prime({frac}, p5), DenominatorNotCoprime);
    CHECK_NOTHROW(reduce_mod_prime({frac}, split_prime(q, 7).at(0)));

    // Q(i) at 3: inert, residue field F_9 = F_3[t]/(t^2 + 1)
    const NumberField qi(QPoly::from_ints({1, 0, 1}));
    const auto primes = split_prime(qi, 3);
    REQUIRE(primes.size() == 1);
    REQUIRE(primes[0].residue_degree == 2);
    const FieldElement i = FieldElement::generator(qi);
    const FieldElement one = FieldElement::from_rational(qi, 1), zero = FieldElement::from_rational(qi, 0);
    const Mat2 rot(i, zero, zero, -i), shear(one, i, zero, one);
    const ReductionResult r9 = reduce_mod_prime({rot, shear}, primes[0]);
    const FiniteRing& f9 = r9.space.ring();
    CHECK(f9.size() == 9);
    // oracle: the image of i squares to -1 and is not in the prime field
    const std::int64_t ti = r9.images[1].e[1];
    CHECK(f9.mul(ti, ti) == f9.from_int(-1));
    CHECK(ti >= 3);
    CHECK(r9.images[0] == Mat2F{{ti, 0, 0, f9.neg(ti)}});
    const FiniteMatrixGroup sl29 = FiniteMatrixGroup::full(MatrixSpace(f9, false));
    for (const auto& m : r9.images) CHECK(sl29.contains(m));
}

TEST_CASE("relator check on reduced images") {
    MatrixSpace s(FiniteRing::field(5), true);
    const Presentation a5 = Presentation::parse({"x", "y"}, {"xx", "yyy", "xyxyxyxyxy"});
    const Mat2F x = s.make(0, 1, -1, 0), y = s.make(0, 1, -1, -1);
    CHECK_NOTHROW(check_relators(a5, s, {x, y}));
    CHECK_THROWS_AS(check_relators(a5, s, {y, x}), RelatorViolated);
    CHECK(FiniteMatrixGroup(s, {x, y}).order() == 60);
}

TEST_CASE("product surjectivity") {
    const ProductSpace p57 = ProductSpace::psl2_primes({5, 7});
    const MatrixSpace& s5 = p57.factors()[0];
    const MatrixSpace& s7 = p57.factors()[1];
    auto rep = product_surjectivity(p57, {pe({s5.make(1, 1, 0, 1), s7.make(1, 1, 0, 1)}),
                                          pe({s5.make(1, 0, 1, 1), s7.make(1, 0, 2, 1)})});
    CHECK(rep.onto);
    CHECK(rep.image_order == 10080);
    CHECK(rep.hall_hypothesis);

    const ProductSpace p55 = ProductSpace::psl2_primes({5, 5});
    auto diag = product_surjectivity(p55, {pe({s5.make(1, 1, 0, 1), s5.make(1, 1, 0, 1)}),
                                           pe({s5.make(1, 0, 1, 1), s5.make(1, 0, 1, 1)})});
    CHECK_FALSE(diag.onto);
    CHECK(diag.image_order == 60);
    CHECK(diag.factor_surjective == std::vector<bool>{true, true});
    CHECK_FALSE(diag.hall_hypothesis);

    const ProductSpace p5 = ProductSpace::psl2_primes({5});
    CHECK(product_surjectivity(p5, {pe({s5.make(1, 1, 0, 1)}), pe({s5.make(1, 0, 1, 1)})}).onto);
    CHECK_FALSE(product_surjectivity(p5, {pe({s5.make(1, 1, 0, 1)})}).onto);

    Budget small;
    small.max_group_order = 5000;
    CHECK_THROWS_AS(product_surjectivity(p57, {}, small), BudgetExceeded);
}

TEST_CASE("product closure agrees with the generic closure") {
    const ProductSpace p57 = ProductSpace::psl2_primes({5, 7});
    std::mt19937_64 rng(11);
    const FiniteMatrixGroup g5 = FiniteMatrixGroup::full(p57.factors()[0]);
    const FiniteMatrixGroup g7 = FiniteMatrixGroup::full(p57.factors()[1]);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<ProductElement> gens{pe({random_element(g5, rng), random_element(g7, rng)})};
        if (trial % 2) gens.push_back(pe({random_element(g5, rng), random_element(g7, rng)}));
        CHECK(product_surjectivity(p57, gens).image_order == product_closure(p57, gens).size());
    }
}

TEST_CASE("Hall property over three factors") {
    const ProductSpace p = ProductSpace::psl2_primes({5, 7, 11});
    std::vector<FiniteMatrixGroup> groups;
    for (const auto& f : p.factors()) groups.push_back(FiniteMatrixGroup::full(f));
    std::mt19937_64 rng(20240611);
    int onto = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<ProductElement> gens(2);
        for (auto& g : gens)
            for (const auto& grp : groups) g.push_back(random_element(grp, rng));
        const auto rep = product_surjectivity(p, gens);
        bool all = true;
        for (bool b : rep.factor_surjective) all = all && b;
        CHECK(rep.onto == all);
        onto += rep.onto;
    }
    CHECK(onto > 0);
}

TEST_CASE("normalizer of a Klein four subgroup") {
    const ProductSpace p = ProductSpace::psl2_primes({5, 7});
    const MatrixSpace& s5 = p.factors()[0];
    const MatrixSpace& s7 = p.factors()[1];
    const ProductElement a = pe({s5.make(0, 1, -1, 0), s7.make(0, 1, -1, 0)});
    const ProductElement b = pe({s5.make(0, 2, 2, 0), s7.make(2, 3, 3, -2)});
    const NormalizerReport rep = normalizer_quotient_order(p, a, b);
    CHECK(rep.witness_order == 16);
    CHECK(rep.bound == 4);
    CHECK(rep.exact);
    CHECK(rep.holds);

    // oracle: enumerate the whole product and test g H g^-1 = H
    const auto all = product_closure(p, {pe({s5.make(1, 1, 0, 1), s7.make(1, 1, 0, 1)}),
                                         pe({s5.make(1, 0, 1, 1), s7.make(1, 0, 1, 1)})});
    REQUIRE(all.size() == 10080);
    const ProductElement ab = p.mul(a, b);
    const std::set<std::vector<std::uint64_t>> hk{p.key(p.identity()), p.key(a), p.key(b), p.key(ab)};
    std::uint64_t count = 0;
    for (const auto& g : all) {
        const auto gi = p.inverse(g);
        if (hk.count(p.key(p.mul(p.mul(g, a), gi))) && hk.count(p.key(p.mul(p.mul(g, b), gi)))) ++count;
    }
    REQUIRE(rep.normalizer_order.has_value());
    CHECK(*rep.normalizer_order == count);
    CHECK(count == 48);
    CHECK(rep.quotient_order == 12);

    const ProductSpace one = ProductSpace::psl2_primes({5});
    const auto r1 = normalizer_quotient_order(one, pe({a[0]}), pe({b[0]}));
    CHECK(r1.bound == 1);
    CHECK(r1.holds);
    CHECK(*r1.normalizer_order == 12);  // A_4

    CHECK_THROWS_AS(normalizer_quotient_order(p, pe({s5.identity(), a[1]}), b), InvalidArgument);
    CHECK_THROWS_AS(normalizer_quotient_order(p, a, a), InvalidArgument);
    CHECK_THROWS_AS(normalizer_quotient_order(p, a, pe({s5.make(1, 1, 0, 1), b[1]})), InvalidArgument);
}

TEST_CASE("pullback cover tables") {
    const ProductSpace p = ProductSpace::psl2_primes({5});
    const MatrixSpace& s = p.factors()[0];
    const Presentation a5 = Presentation::parse({"x", "y"}, {"xx", "yyy", "xyxyxyxyxy"});
    const std::vector<ProductElement> img{pe({s.make(0, 1, -1, 0)}), pe({s.make(0, 1, -1, -1)})};
    const ProductElement A = pe({s.make(0, 1, -1, 0)}), B = pe({s.make(0, 2, 2, 0)});
    const std::vector<ProductElement> klein{p.identity(), A, B, p.mul(A, B)};
    const CosetTable t = pullback_cover_table(a5, p, img, klein);
    CHECK(t.index == 15);
    CHECK(t.is_transitive());
    CHECK(t.relators_trivial(a5));
    CHECK_NOTHROW(validate_table(a5, t));
    // the same subgroup should appear among the index-15 subgroups found by low-index search
    Budget b;
    b.max_index = 15;
    bool found = false;
    for (const auto& u : low_index_subgroups(a5, 15, b)) found = found || u == t.standardized();
    CHECK(found);

    const auto whole = product_closure(p, img);
    CHECK(pullback_cover_table(a5, p, img, whole).index == 1);
    CHECK(pullback_cover_table(a5, p, img, {p.identity()}).index == 60);

    // F_2 -> Z/2 through an involution of PSL(2,3)
    const ProductSpace z = ProductSpace::psl2_primes({3});
    const MatrixSpace& s3 = z.factors()[0];
    const Presentation f2 = Presentation::free_group(2);
    const CosetTable c2 = pullback_cover_table(f2, z, {pe({s3.make(0, 1, -1, 0)}), z.identity()}, {z.identity()});
    CHECK(c2.index == 2);
    const auto tower = cyclic_cover_table(f2, {1, 0}, 2);
    CHECK(c2.standardized() == tower.standardized());

    CHECK_THROWS_AS(pullback_cover_table(a5, p, {img[1], img[0]}, klein), RelatorViolated);
    CHECK_THROWS_AS(pullback_cover_table(a5, p, img, {p.identity(), pe({s.make(1, 1, 0, 1)})}), InvalidArgument);
}
