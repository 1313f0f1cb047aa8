#include <doctest.h>

#include "kll/error.hpp"
#include "kll/fpgroups.hpp"
#include "kll/poly.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace kll;

namespace {

using Perm = std::vector<int>;

std::vector<Perm> all_perms(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Subgroups of index exactly n = transitive homomorphisms to S_n / (n-1)!.
std::uint64_t subgroups_by_hom_count(const Presentation& pres, int n) {
    const auto perms = all_perms(n);
    const auto r = static_cast<std::size_t>(pres.rank());
    std::vector<std::size_t> pick(r, 0);
    std::uint64_t homs = 0;
    while (true) {
        CosetTable t{n, {}};
        for (std::size_t g = 0; g < r; ++g) t.action.push_back(perms[pick[g]]);
        if (t.relators_trivial(pres) && t.is_transitive()) ++homs;
        std::size_t i = 0;
        while (i < r && ++pick[i] == perms.size()) pick[i++] = 0;
        if (i == r) break;
    }
    std::uint64_t fact = 1;
    for (int k = 2; k < n; ++k) fact *= static_cast<std::uint64_t>(k);
    return homs / fact;
}

Presentation free_product_z2(int k) {
    std::vector<std::string> gens, rels;
    for (int i = 0; i < k; ++i) {
        gens.emplace_back(1, static_cast<char>('a' + i));
        rels.push_back(gens.back() + gens.back());
    }
    return Presentation::parse(gens, rels);
}

Presentation trefoil() { return Presentation::parse({"x", "y"}, {"xyxYXY"}); }
Presentation figure_eight() { return Presentation::parse({"x", "y"}, {"yxYxyXYxYX"}); }
Presentation genus_two() { return Presentation::parse({"a", "b", "c", "d"}, {"abABcdCD"}); }

// Eliminate a generator occurring exactly once in some relator; repeat. Returns the free rank when
// every relator disappears, or -1.
int free_rank_after_elimination(Presentation p) {
    bool progress = true;
    while (progress && !p.relators.empty()) {
        progress = false;
        for (std::size_t ri = 0; ri < p.relators.size() && !progress; ++ri) {
            const Word& r = p.relators[ri];
            for (std::size_t pos = 0; pos < r.size() && !progress; ++pos) {
                const int g = std::abs(r[pos]);
                if (std::count_if(r.begin(), r.end(), [&](int l) { return std::abs(l) == g; }) != 1) continue;
                // r = u g^e v  =>  g^e = u^-1 v^-1
                Word u(r.begin(), r.begin() + static_cast<long>(pos)), v(r.begin() + static_cast<long>(pos) + 1, r.end());
                Word sub = concat(inverse(u), inverse(v));
                if (r[pos] < 0) sub = inverse(sub);
                Presentation q;
                for (int i = 1; i <= p.rank(); ++i)
                    if (i != g) q.generators.push_back(p.generators[static_cast<std::size_t>(i - 1)]);
                for (std::size_t rj = 0; rj < p.relators.size(); ++rj) {
                    if (rj == ri) continue;
                    Word w;
                    for (int l : p.relators[rj]) {
                        if (std::abs(l) == g) {
                            const Word s = l > 0 ? sub : inverse(sub);
                            w.insert(w.end(), s.begin(), s.end());
                        } else {
                            w.push_back(l);
                        }
                    }
                    for (int& l : w) l = (l > 0 ? 1 : -1) * (std::abs(l) > g ? std::abs(l) - 1 : std::abs(l));
                    q.relators.push_back(w);
                }
                p = q.normalized();
                progress = true;
            }
        }
    }
    return p.relators.empty() ? p.rank() : -1;
}

// d_p of the i-fold cyclic cover of a two-bridge knot: 1 + deg gcd(Delta, t^i - 1) over F_p.
int alexander_oracle(const QPoly& delta, int i, std::int64_t p) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(i) + 1, 0);
    c[0] = p - 1;
    c.back() = 1;
    return 1 + gcd(FpPoly::reduce(delta, p), FpPoly(p, c)).degree();
}

Presentation random_presentation(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> ngen(1, 3), nrel(0, 3), len(1, 8), coin(0, 1);
    Presentation p = Presentation::free_group(ngen(rng));
    std::uniform_int_distribution<int> gen(1, p.rank());
    const int k = nrel(rng);
    for (int i = 0; i < k; ++i) {
        Word w;
        const int l = len(rng);
        for (int j = 0; j < l; ++j) w.push_back(coin(rng) ? gen(rng) : -gen(rng));
        p.relators.push_back(w);
    }
    return p.normalized();
}

}  // namespace

TEST_CASE("words and parsing") {
    CHECK(free_reduce({1, 2, -2, -1, 1}) == Word{1});
    CHECK(cyclically_reduce({-1, 2, 1}) == Word{2});
    CHECK(inverse({1, -2}) == Word{2, -1});
    CHECK(power({1, 2}, -2) == Word{-2, -1, -2, -1});
    auto p = Presentation::parse({"a", "b"}, {"aabAB", "aA", "aabAB"});
    CHECK(p.relators.size() == 1);
    CHECK(p.word_to_string(p.relators[0]) == "aabAB");
    CHECK_THROWS_AS(Presentation::parse({"a"}, {"ab"}), InvalidArgument);
    CHECK_THROWS_AS(Presentation::parse({}, {}), InvalidArgument);
}

TEST_CASE("d_p examples") {
    CHECK(d_p(Presentation::free_group(2), 2) == 2);
    auto z2 = Presentation::parse({"x"}, {"xx"});
    CHECK(d_p(z2, 2) == 1);
    CHECK(d_p(z2, 3) == 0);
    auto p = Presentation::parse({"x", "y"}, {"xyXY", "xxxx", "yyyy"});
    CHECK(d_p(p, 2) == 2);
    CHECK(d_p(p, 3) == 0);
    auto ab = abelianization(p);
    CHECK(ab.free_rank == 0);
    CHECK(ab.torsion == std::vector<Integer>{4, 4});
    CHECK_THROWS_AS(d_p(p, 4), InvalidArgument);
}

TEST_CASE("d_p agrees with the Smith form on random presentations") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        auto p = random_presentation(rng);
        for (std::int64_t q : {2, 3, 5, 7}) CHECK(d_p(p, q) == d_p_smith(p, q));
    }
}

TEST_CASE("Reidemeister-Schreier") {
    SUBCASE("index-1 table returns the presentation") {
        auto p = trefoil();
        auto rs = reidemeister_schreier(p, CosetTable{1, {{0}, {0}}});
        CHECK(rs.schreier_rank == 2);
        CHECK(rs.presentation.relators == p.relators);
    }
    SUBCASE("free group index 2 has rank 3") {
        auto rs = reidemeister_schreier(Presentation::free_group(2), CosetTable{2, {{1, 0}, {0, 1}}});
        CHECK(rs.schreier_rank == 3);
        CHECK(rs.presentation.relators.empty());
    }
    SUBCASE("free product of four Z/2 has a free rank 3 kernel") {
        auto p = free_product_z2(4);
        CosetTable t{2, std::vector<std::vector<int>>(4, {1, 0})};
        auto rs = reidemeister_schreier(p, t);
        CHECK(rs.schreier_rank == 7);
        CHECK(free_rank_after_elimination(rs.presentation) == 3);
        auto ab = abelianization(rs.presentation);
        CHECK(ab.free_rank == 3);
        CHECK(ab.torsion.empty());
    }
    SUBCASE("invalid tables are rejected") {
        auto p = Presentation::parse({"x"}, {"xxx"});
        CHECK_THROWS_AS(reidemeister_schreier(p, CosetTable{2, {{1, 0}}}), InvalidArgument);
        CHECK_THROWS_AS(reidemeister_schreier(p, CosetTable{2, {{0, 1}}}), InvalidArgument);
    }
}

TEST_CASE("low-index enumeration examples") {
    auto f2 = low_index_subgroups(Presentation::free_group(2), 2);
    CHECK(f2.size() == 4);
    CHECK(subgroup_counts(f2, 2) == std::vector<std::uint64_t>{1, 3});
    auto c6 = low_index_subgroups(Presentation::parse({"x"}, {"xxxxxx"}), 6);
    CHECK(c6.size() == 4);
    CHECK(subgroup_counts(c6, 6) == std::vector<std::uint64_t>{1, 1, 1, 0, 0, 1});
    auto z2s = low_index_subgroups(free_product_z2(4), 2);
    CHECK(subgroup_counts(z2s, 2)[1] == subgroups_by_hom_count(free_product_z2(4), 2));
    CHECK(subgroup_counts(z2s, 2)[1] == 15);
}

TEST_CASE("low-index counts match the homomorphism oracle") {
    const std::vector<Presentation> pres = {
        Presentation::free_group(2), trefoil(), figure_eight(), free_product_z2(3),
        Presentation::parse({"x", "y"}, {"xx", "yyy"}), Presentation::parse({"x", "y"}, {"xx", "yyy", "xyxyxyxyxy"}),
        Presentation::parse({"x", "y"}, {"xyXY"})};
    for (const auto& p : pres) {
        const auto counts = subgroup_counts(low_index_subgroups(p, 4), 4);
        for (int n = 1; n <= 4; ++n) CHECK(counts[static_cast<std::size_t>(n - 1)] == subgroups_by_hom_count(p, n));
    }
}

TEST_CASE("low-index output is canonical, valid and sorted") {
    auto p = Presentation::parse({"x", "y"}, {"xx", "yyy"});
    auto tables = low_index_subgroups(p, 6);
    CHECK(std::is_sorted(tables.begin(), tables.end()));
    CHECK(std::adjacent_find(tables.begin(), tables.end()) == tables.end());
    for (const auto& t : tables) {
        CHECK(t == t.standardized());
        CHECK_NOTHROW(validate_table(p, t));
    }
}

TEST_CASE("index-2 subgroups number 2^d_2 - 1") {
    std::mt19937_64 rng(11);
    std::vector<Presentation> pres = {trefoil(), figure_eight(), genus_two(), free_product_z2(4)};
    for (int i = 0; i < 30; ++i) pres.push_back(random_presentation(rng));
    for (const auto& p : pres) {
        const auto counts = subgroup_counts(low_index_subgroups(p, 2), 2);
        CHECK(counts[1] == (std::uint64_t{1} << d_p(p, 2)) - 1);
    }
}

TEST_CASE("Schreier rank of free-group subgroups") {
    for (int r : {2, 3}) {
        const auto f = Presentation::free_group(r);
        for (const auto& t : low_index_subgroups(f, r == 2 ? 4 : 3)) {
            const auto rs = reidemeister_schreier(f, t);
            CHECK(rs.schreier_rank == t.index * (r - 1) + 1);
            CHECK(d_p(rs.presentation, 2) == rs.schreier_rank);
        }
    }
}

TEST_CASE("d_p is independent of the transversal") {
    for (const auto& p : {trefoil(), figure_eight(), free_product_z2(3), genus_two()})
        for (const auto& t : low_index_subgroups(p, 4)) {
            const auto bfs = reidemeister_schreier(p, t, Transversal::BreadthFirst);
            const auto dfs = reidemeister_schreier(p, t, Transversal::DepthFirst);
            for (std::int64_t q : {2, 3, 5}) CHECK(d_p(bfs.presentation, q) == d_p(dfs.presentation, q));
        }
}

TEST_CASE("low-index budget") {
    CHECK_THROWS_AS(low_index_subgroups(Presentation::free_group(2), 13), BudgetExceeded);
    Budget tight;
    tight.max_nodes = 50;
    CHECK_THROWS_AS(low_index_subgroups(Presentation::free_group(3), 5, tight), BudgetExceeded);
}

TEST_CASE("cyclic towers") {
    SUBCASE("free group") {
        auto levels = cyclic_tower(Presentation::free_group(2), {1, 0}, 3, {2});
        REQUIRE(levels.size() == 3);
        for (int i = 0; i < 3; ++i) CHECK(levels[static_cast<std::size_t>(i)].d_p.at(2) == i + 2);
    }
    SUBCASE("Z^2") {
        for (const auto& l : cyclic_tower(Presentation::parse({"x", "y"}, {"xyXY"}), {1, 0}, 6, {2, 3})) {
            CHECK(l.d_p.at(2) == 2);
            CHECK(l.d_p.at(3) == 2);
        }
    }
    SUBCASE("knot groups against the Alexander polynomial") {
        const std::vector<std::pair<Presentation, QPoly>> knots = {{trefoil(), QPoly::from_ints({1, -1, 1})},
                                                                   {figure_eight(), QPoly::from_ints({1, -3, 1})}};
        for (const auto& [p, delta] : knots)
            for (const auto& l : cyclic_tower(p, {1, 1}, 12, {2, 3, 5, 7}))
                for (const auto& [q, d] : l.d_p) CHECK(d == alexander_oracle(delta, l.index, q));
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(cyclic_tower(Presentation::free_group(2), {2, 0}, 2, {2}), NotSurjective);
        CHECK_THROWS_AS(cyclic_tower(trefoil(), {1, 0}, 2, {2}), RelatorNotKilled);
        CHECK_THROWS_AS(cyclic_tower(trefoil(), {1}, 2, {2}), InvalidArgument);
    }
}

TEST_CASE("intersections of finite-index subgroups") {
    const auto f = Presentation::free_group(2);
    const auto a = cyclic_cover_table(f, {1, 0}, 3), b = cyclic_cover_table(f, {0, 1}, 2);
    const auto c = intersect(a, b);
    CHECK(c.index == 6);
    CHECK(c == c.standardized());
    CHECK(intersect(a, a).index == 3);
}

TEST_CASE("linear growth passes to intersections with a finite-index normal subgroup") {
    // Surface group tower with d_2(G_i) / i >= 2, intersected with the kernel of b -> Z/2.
    const auto g = genus_two();
    const auto h = cyclic_cover_table(g, {0, 1, 0, 0}, 2);
    const Rational lambda = 2;
    for (int i = 1; i <= 8; ++i) {
        const auto gi = cyclic_cover_table(g, {1, 0, 0, 0}, i);
        const int dg = d_p(reidemeister_schreier(g, gi).presentation, 2);
        CHECK(ratio(dg, i) >= lambda);
        const auto both = intersect(gi, h);
        const int db = d_p(reidemeister_schreier(g, both).presentation, 2);
        CHECK(ratio(db, both.index) >= lambda / h.index);
    }
}

TEST_CASE("Golod-Shafarevich") {
    auto small = golod_shafarevich_check(4, 0, 4);
    CHECK(small.holds);
    CHECK(small.margin == 4);
    CHECK_FALSE(golod_shafarevich_check(2, 3, 1).holds);
    CHECK_THROWS_AS(golod_shafarevich_check(-1, 0, 0), InvalidArgument);

    auto at81 = golod_shafarevich_chain(81);
    CHECK(at81.positive == Decision::True);
    CHECK(at81.value.hi < 1);
    CHECK(golod_shafarevich_chain(80).positive == Decision::False);
    // the expression is increasing from the threshold on
    for (int d = 81; d < 200; ++d) CHECK(golod_shafarevich_chain(d).positive == Decision::True);
}

TEST_CASE("largeness conditions on finite data") {
    SUBCASE("free group tower") {
        std::vector<LargenessTriple> data;
        for (const auto& l : cyclic_tower(Presentation::free_group(2), {1, 0}, 8, {2}))
            data.push_back({1, l.index, l.d_p.at(2), true});
        auto rep = largeness_conditions(data);
        CHECK(rep.condition_i);
        CHECK(rep.condition_ii);
        CHECK(rep.condition_iii);
        CHECK(rep.d_ratio_sup == 2);
    }
    SUBCASE("constant d fails (iii)") {
        std::vector<LargenessTriple> data;
        for (int i = 1; i <= 8; ++i) data.push_back({1, i, 2, true});
        auto rep = largeness_conditions(data);
        CHECK(rep.condition_ii);
        CHECK_FALSE(rep.condition_iii);
    }
    SUBCASE("[H:J] = 1 fails (ii)") {
        std::vector<LargenessTriple> data;
        for (int i = 1; i <= 8; ++i) data.push_back({i, i, i, true});
        auto rep = largeness_conditions(data);
        CHECK_FALSE(rep.condition_ii);
        CHECK(rep.condition_iii);
        CHECK_FALSE(rep.all_consistent());
    }
    SUBCASE("non-abelian flag") {
        auto rep = largeness_conditions({{1, 2, 3, false}});
        CHECK_FALSE(rep.condition_i);
    }
}

TEST_CASE("free-group subgroup counts follow Hall's recursion") {
    // a_n = n (n!)^(r-1) - sum_{k<n} ((n-k)!)^(r-1) a_k
    for (int r : {2, 3}) {
        const int top = r == 2 ? 6 : 4;
        std::vector<Integer> fact{1}, a{0};
        for (int n = 1; n <= top; ++n) fact.push_back(fact.back() * n);
        for (int n = 1; n <= top; ++n) {
            Integer v = n * ipow(fact[static_cast<std::size_t>(n)], static_cast<unsigned long>(r - 1));
            for (int k = 1; k < n; ++k) v -= ipow(fact[static_cast<std::size_t>(n - k)], static_cast<unsigned long>(r - 1)) * a[static_cast<std::size_t>(k)];
            a.push_back(v);
        }
        const auto counts = subgroup_counts(low_index_subgroups(Presentation::free_group(r), top), top);
        for (int n = 1; n <= top; ++n) CHECK(Integer(static_cast<unsigned long>(counts[static_cast<std::size_t>(n - 1)])) == a[static_cast<std::size_t>(n)]);
    }
}
