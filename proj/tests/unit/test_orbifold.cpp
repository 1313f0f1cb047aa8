#include <doctest.h>

#include "kll/error.hpp"
#include "kll/orbifold.hpp"

#include <random>

using namespace kll;

namespace {

// Theta graph in S^3: the complement is free on two of its three faces.
OrbifoldData theta(int o0, int o1, int o2) {
    OrbifoldData d;
    d.manifold = Presentation::parse({"x", "y"}, {});
    d.locus.vertices = 2;
    d.locus.edges = {{"a", {0, 1}, o0, {1}, std::nullopt},
                     {"b", {0, 1}, o1, {2, -1}, std::nullopt},
                     {"c", {0, 1}, o2, {-2}, std::nullopt}};
    return d;
}

OrbifoldData circle(int order, Word meridian, std::optional<Word> core) {
    OrbifoldData d;
    d.manifold = Presentation::parse({"x", "y"}, {});
    d.locus.edges = {{"c", {}, order, std::move(meridian), std::move(core)}};
    return d;
}

// Independent count of b1 by edge-at-a-time union-find on the whole graph.
int b1_oracle(const SingularLocus& l, std::int64_t p) {
    std::vector<int> parent(static_cast<std::size_t>(l.vertices));
    for (int i = 0; i < l.vertices; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    int cycles = 0;
    for (const auto& e : l.edges) {
        if (e.order % p != 0) continue;
        if (e.is_circle()) {
            ++cycles;
            continue;
        }
        const int a = find(e.ends[0]), b = find(e.ends[1]);
        if (a == b)
            ++cycles;
        else
            parent[static_cast<std::size_t>(a)] = b;
    }
    return cycles;
}

ZMatrix diag(std::vector<int> s) {
    ZMatrix m(s.size(), std::vector<Integer>(s.size(), 0));
    for (std::size_t i = 0; i < s.size(); ++i) m[i][i] = s[i];
    return m;
}

}  // namespace

TEST_CASE("stratification") {
    auto all2 = stratify(theta(2, 2, 2).locus, 2);
    REQUIRE(all2.negative.size() == 1);
    CHECK(all2.negative[0].euler == -1);
    CHECK(all2.zero.empty());
    CHECK(all2.b1() == 2);

    CHECK(stratify(circle(3, {1}, std::nullopt).locus, 2).edge_count() == 0);

    // two order-2 edges of a theta graph close up into a circle
    auto two = stratify(theta(2, 2, 3).locus, 2);
    REQUIRE(two.zero.size() == 1);
    CHECK(two.zero[0].circle);
    CHECK(two.positive.empty());

    // a single order-2 edge is an arc: chi = +1, in neither stratum
    auto arc = stratify(theta(2, 3, 3).locus, 2);
    REQUIRE(arc.positive.size() == 1);
    CHECK(arc.positive[0].euler == 1);
    CHECK(arc.zero.empty());
    CHECK(arc.negative.empty());
    CHECK(arc.b1() == 0);
    CHECK(stratify(theta(2, 3, 3).locus, 3).zero.size() == 1);
}

TEST_CASE("locus validation") {
    auto d = theta(2, 2, 2);
    d.locus.edges[2].order = 1;
    CHECK_THROWS_AS(d.validate(), InvalidArgument);
    d = theta(2, 2, 2);
    d.locus.edges[2].ends = {0, 0};
    CHECK_THROWS_AS(d.validate(), InvalidArgument);
    // two parallel edges form a subdivided circle, which is allowed
    d = theta(2, 2, 2);
    d.locus.edges.pop_back();
    CHECK_NOTHROW(d.validate());
    d = theta(2, 2, 2);
    d.locus.edges[0].meridian = {3};
    CHECK_THROWS_AS(d.validate(), InvalidArgument);
    d = theta(2, 2, 2);
    d.locus.edges[1].id = "a";
    CHECK_THROWS_AS(d.validate(), InvalidArgument);
}

TEST_CASE("orbifold presentation and homology bound") {
    auto c = circle(2, {1}, std::nullopt);
    auto p = orbifold_presentation(c);
    CHECK(p.relators == std::vector<Word>{{1, 1}});
    OrbifoldData bare;
    bare.manifold = Presentation::parse({"x", "y"}, {"xyXY"});
    CHECK(orbifold_presentation(bare).relators == bare.manifold.relators);

    auto t = theta(2, 2, 2);
    CHECK(d_p(orbifold_presentation(t), 2) >= 2);
    auto h = homology_lower_bound(t, 2);
    CHECK(h.bound == 2);
    CHECK(h.actual == 2);
    CHECK(h.actual_smith == 2);
    CHECK(h.holds);
    auto h3 = homology_lower_bound(t, 3);
    CHECK(h3.bound == 0);
    CHECK(h3.holds);
    // circle whose meridian is trivial in H_1(M; F_2)
    auto sq = circle(2, {1, 1}, std::nullopt);
    auto hs = homology_lower_bound(sq, 2);
    CHECK(hs.bound == 1);
    CHECK(hs.holds);
}

TEST_CASE("presentation deficit") {
    CHECK_THROWS_AS(presentation_deficit(OrbifoldData{Presentation::free_group(1), {}}), EmptyLocus);
    OrbifoldData one;
    one.manifold = Presentation::free_group(1);
    one.locus.edges = {{"c", {}, 3, {1}, std::nullopt}};
    auto r = presentation_deficit(one);
    CHECK(r.manifold_deficit == -1);
    CHECK(r.deficit == 0);
    CHECK(r.bound == 0);
    CHECK(r.holds);

    auto t = presentation_deficit(theta(2, 2, 2));
    CHECK(t.meridian_relators == 3);

    OrbifoldData two;
    two.manifold = Presentation::free_group(2);
    two.locus.edges = {{"c1", {}, 2, {1}, std::nullopt}, {"c2", {}, 2, {2}, std::nullopt}};
    auto r2 = presentation_deficit(two);
    CHECK(r2.bound == 2);
    CHECK(r2.deficit == 0);
    CHECK(r2.holds);
}

TEST_CASE("fibration hypothesis") {
    OrbifoldData d;
    d.manifold = Presentation::parse({"x", "y"}, {});
    d.locus.edges = {{"c", {}, 2, {}, Word{2}}};
    auto yes = fibration_hypothesis(d, {1, 0}, 2);
    CHECK(yes.satisfied);
    CHECK(yes.witness == std::vector<std::string>{"c"});
    d.locus.edges[0].core = Word{1};
    CHECK_FALSE(fibration_hypothesis(d, {1, 0}, 2).satisfied);
    d.locus.edges[0].meridian = {1};
    CHECK_THROWS_AS(fibration_hypothesis(d, {1, 0}, 2), RelatorNotKilled);

    // a circle and b1 >= 2: a suitable phi exists
    OrbifoldData r;
    r.manifold = Presentation::parse({"x", "y", "t"}, {});
    r.locus.edges = {{"c", {}, 2, {}, Word{3, 1}}};
    auto found = find_fibration(r, 2);
    REQUIRE(found);
    CHECK(fibration_hypothesis(r, found->first, 2).satisfied);

    // cores along a cycle of a graph are summed with orientation
    auto t = theta(2, 2, 3);
    t.manifold = Presentation::parse({"x", "y", "z"}, {});
    t.locus.edges[0].meridian = {};
    t.locus.edges[1].meridian = {};
    t.locus.edges[2].meridian = {};
    t.locus.edges[0].core = Word{3};
    t.locus.edges[1].core = Word{3};
    auto ok = fibration_hypothesis(t, {1, 0, 5}, 2);
    CHECK(ok.satisfied);
    t.locus.edges[1].core = Word{1};
    CHECK_FALSE(fibration_hypothesis(t, {0, 0, 1}, 2).satisfied);
    t.locus.edges[1].core.reset();
    CHECK(fibration_hypothesis(t, {0, 0, 1}, 2).unknown_core.size() == 1);
}

TEST_CASE("quotient by meridians") {
    auto t = theta(2, 2, 2);
    CHECK(quotient_by_meridians(t, {}).relators == orbifold_presentation(t).relators);
    auto all = quotient_by_meridians(t, {"a", "b", "c"});
    CHECK(d_p(all, 2) == 0);
    CHECK(d_p(orbifold_presentation(t), 2) - d_p(all, 2) <= 3);
    CHECK_THROWS_AS(quotient_by_meridians(t, {"zz"}), InvalidArgument);
}

TEST_CASE("involution eigenspaces") {
    auto r = involution_eigenspace_analysis(diag({1, -1, -1, -1}), diag({-1, 1, -1, -1}));
    CHECK(r.dims[0] == 1);
    CHECK(r.dims[1] == 1);
    CHECK(r.dims[2] == 2);
    CHECK(r.claim_holds);
    auto id = involution_eigenspace_analysis(diag({1, 1, 1, 1}), diag({1, 1, 1, 1}));
    CHECK(id.dims[2] == 4);
    CHECK_THROWS_AS(involution_eigenspace_analysis(diag({2, 1, 1, 1}), diag({1, 1, 1, 1})), NotInvolution);
    ZMatrix swap = {{0, 1}, {1, 0}};
    CHECK_THROWS_AS(involution_eigenspace_analysis(swap, diag({1, -1})), NotCommuting);

    // conjugates of sign patterns by signed permutations, dimension 4 and 5
    std::mt19937_64 rng(5);
    for (int n : {4, 5})
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<int> s1, s2, perm(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                s1.push_back(rng() % 2 ? 1 : -1);
                s2.push_back(rng() % 2 ? 1 : -1);
                perm[static_cast<std::size_t>(i)] = i;
            }
            std::shuffle(perm.begin(), perm.end(), rng);
            ZMatrix p(static_cast<std::size_t>(n), std::vector<Integer>(static_cast<std::size_t>(n), 0)), pinv = p;
            for (int i = 0; i < n; ++i) {
                const int sign = rng() % 2 ? 1 : -1;
                p[static_cast<std::size_t>(i)][static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = sign;
                pinv[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])][static_cast<std::size_t>(i)] = sign;
            }
            auto conj = [&](const ZMatrix& d) {
                ZMatrix out(d.size(), std::vector<Integer>(d.size(), 0));
                for (std::size_t i = 0; i < d.size(); ++i)
                    for (std::size_t j = 0; j < d.size(); ++j)
                        for (std::size_t k = 0; k < d.size(); ++k)
                            for (std::size_t l = 0; l < d.size(); ++l) out[i][l] += p[i][j] * d[j][k] * pinv[k][l];
                return out;
            };
            auto rep = involution_eigenspace_analysis(conj(diag(s1)), conj(diag(s2)));
            int plus[3] = {0, 0, 0};
            for (int i = 0; i < n; ++i) {
                plus[0] += s1[static_cast<std::size_t>(i)] == 1;
                plus[1] += s2[static_cast<std::size_t>(i)] == 1;
                plus[2] += s1[static_cast<std::size_t>(i)] == s2[static_cast<std::size_t>(i)];
            }
            for (int k = 0; k < 3; ++k) CHECK(rep.dims[k] == plus[k]);
            CHECK(rep.claim_holds);
        }
}

TEST_CASE("random realizable instances satisfy the homology bound") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        const auto d = random_realizable_orbifold(rng);
        REQUIRE_NOTHROW(d.validate());
        for (std::int64_t p : {2, 3, 5}) {
            const auto h = homology_lower_bound(d, p);
            CHECK(h.actual == h.actual_smith);
            CHECK(h.bound == b1_oracle(d.locus, p));
            CHECK(h.holds);
        }
        // trivalent components: b1 = V/2 + 1
        for (const auto& c : components(d.locus, [&] {
                 std::vector<int> e(d.locus.edges.size());
                 for (std::size_t k = 0; k < e.size(); ++k) e[k] = static_cast<int>(k);
                 return e;
             }()))
            if (!c.vertices.empty()) CHECK(c.b1 == static_cast<int>(c.vertices.size()) / 2 + 1);
        CHECK(presentation_deficit(d).holds);
    }
}

TEST_CASE("killing meridians already trivial mod 2 leaves d_2 unchanged") {
    std::mt19937_64 rng(99);
    int nontrivial_cases = 0;
    for (int i = 0; i < 100; ++i) {
        auto d = random_realizable_orbifold(rng);
        const auto base = orbifold_presentation(d);
        const int before = d_p(base, 2);
        std::vector<std::string> trivial;
        for (const auto& e : d.locus.edges) {
            Presentation q = base;
            q.relators.push_back(e.meridian);
            const int after = d_p(q.normalized(), 2);
            CHECK(after >= before - 1);
            if (after == before) trivial.push_back(e.id);
        }
        if (trivial.size() > 1) ++nontrivial_cases;
        CHECK(d_p(quotient_by_meridians(d, trivial), 2) == before);
    }
    CHECK(nontrivial_cases > 10);
}
