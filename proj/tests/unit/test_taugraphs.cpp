#include <doctest.h>

#include "kll/error.hpp"
#include "kll/finquot.hpp"
#include "kll/fpgroups.hpp"
#include "kll/taugraphs.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace kll;

namespace {

// Boundary recomputed from scratch for every subset.
Rational brute_cheeger(const CosetGraph& g) {
    const int n = g.vertices;
    Rational best(-1);
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
        const int size = __builtin_popcount(mask);
        if (2 * size > n) continue;
        long b = 0;
        for (const auto& e : g.edges) b += ((mask >> e[0]) & 1U) != ((mask >> e[1]) & 1U);
        const Rational r = ratio(b, size);
        if (best < 0 || r < best) best = r;
    }
    return best;
}

CosetGraph random_schreier(int n, int k, std::mt19937_64& rng) {
    std::vector<std::vector<int>> action(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(n)));
    for (auto& row : action) {
        std::iota(row.begin(), row.end(), 0);
        std::shuffle(row.begin(), row.end(), rng);
    }
    return CosetGraph::from_action(action, n);
}

}  // namespace

TEST_CASE("Cheeger constants of small graphs") {
    CHECK(cheeger_exact(CosetGraph::cycle(4)).h == 1);
    CHECK(cheeger_exact(CosetGraph::cycle(6)).h == ratio(2, 3));
    CHECK(cheeger_exact(CosetGraph::complete(4)).h == 2);
    const auto w = cheeger_exact(CosetGraph::cycle(6)).witness;
    CHECK(w.size() == 3);
}

TEST_CASE("cycle closed form") {
    for (int n = 3; n <= 24; ++n) CHECK(cheeger_exact(CosetGraph::cycle(n)).h == ratio(2, n / 2));
}

TEST_CASE("Gray-code walk agrees with brute force") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 11;
        const CosetGraph g = random_schreier(n, 1 + trial % 3, rng);
        CHECK(cheeger_exact(g).h == brute_cheeger(g));
    }
    Budget b;
    b.max_cheeger_vertices = 10;
    CHECK_THROWS_AS(cheeger_exact(CosetGraph::cycle(11), b), TooLargeForExact);
}

TEST_CASE("loops never enter the boundary") {
    // generator fixing every coset adds loops only
    CosetGraph g = CosetGraph::from_action({{1, 2, 3, 0}, {0, 1, 2, 3}}, 4);
    CHECK(g.is_regular(4));
    CHECK(cheeger_exact(g).h == 1);
}

TEST_CASE("spectral bounds") {
    const auto c6 = cheeger_spectral_bounds(CosetGraph::cycle(6));
    CHECK(c6.lower <= ratio(2, 3));
    CHECK(c6.upper >= ratio(2, 3));
    CHECK(c6.lambda2.contains(1));  // 2 - 2cos(pi/3)
    const auto k4 = cheeger_spectral_bounds(CosetGraph::complete(4));
    CHECK(k4.lambda2.contains(4));
    CHECK(k4.lower <= 2);
    CHECK(k4.upper >= 2);
    CHECK(k4.lambda2.width() < ratio(1, 1000000));
    CosetGraph triangles;
    triangles.vertices = 6;
    triangles.edges = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
    CHECK_THROWS_AS(cheeger_spectral_bounds(triangles), Disconnected);
}

TEST_CASE("charpoly of the cycle Laplacian") {
    // C_4 Laplacian eigenvalues 0, 2, 2, 4: x(x-2)^2(x-4) = x^4 - 8x^3 + 20x^2 - 16x
    const QVector c = laplacian_charpoly(CosetGraph::cycle(4));
    CHECK(c == QVector{0, -16, 20, -8, 1});
}

TEST_CASE("spectral sandwich on random graphs") {
    std::mt19937_64 rng(77);
    int tested = 0;
    for (int trial = 0; trial < 40 && tested < 20; ++trial) {
        const int n = 4 + trial % 17;
        const CosetGraph g = random_schreier(n, 2, rng);
        if (!g.is_connected()) continue;
        ++tested;
        const Rational h = cheeger_exact(g).h;
        const auto s = cheeger_spectral_bounds(g);
        CHECK(s.lower <= h);
        CHECK(h <= s.upper);
    }
    CHECK(tested >= 10);
}

TEST_CASE("cyclic Schreier graphs are 2k-regular") {
    const Presentation f2 = Presentation::free_group(2);
    for (int n = 2; n <= 9; ++n) {
        const CosetGraph g = CosetGraph::from_table(cyclic_cover_table(f2, {1, 0}, n));
        CHECK(g.generator_set_size == 2);
        CHECK(g.is_regular(4));
        CHECK(g.is_connected());
    }
    const Presentation f3 = Presentation::free_group(3);
    CHECK(CosetGraph::from_table(cyclic_cover_table(f3, {1, 1, 0}, 5)).is_regular(6));
}

TEST_CASE("tau family verdicts") {
    std::vector<CosetGraph> cycles;
    for (int n = 4; n <= 24; ++n) cycles.push_back(CosetGraph::cycle(n));
    const TauReport rc = tau_family_report(cycles);
    CHECK(rc.verdict == TauVerdict::TrendToZero);
    CHECK(rc.inf_lower == ratio(1, 6));
    for (std::size_t i = 0; i < rc.entries.size(); ++i) CHECK(*rc.entries[i].exact == ratio(2, (i + 4) / 2));

    const TauReport rk = tau_family_report({CosetGraph::complete(4), CosetGraph::complete(4), CosetGraph::complete(4)});
    CHECK(rk.verdict == TauVerdict::Consistent);
    CHECK(rk.inf_lower == 2);

    // P^1(F_p) under two generating sets
    std::vector<CosetGraph> std_gens, alt_gens;
    for (std::int64_t p : {5, 7, 11}) {
        MatrixSpace s(FiniteRing::field(p), false);
        const Mat2F u = s.make(1, 1, 0, 1), l = s.make(1, 0, 1, 1);
        std_gens.push_back(CosetGraph::projective_line(s, {u, l}));
        alt_gens.push_back(CosetGraph::projective_line(s, {u, s.mul(u, l), s.mul(l, l)}));
        CHECK(std_gens.back().is_regular(4));
    }
    const TauReport rs = tau_family_report(std_gens), ra = tau_family_report(alt_gens);
    CHECK(rs.verdict == TauVerdict::Consistent);
    CHECK(ra.verdict == rs.verdict);
    CHECK(rs.inf_lower > 0);

    CHECK_THROWS_AS(tau_family_report({CosetGraph::cycle(4), std_gens[0]}), InvalidArgument);
    CHECK(tau_csv(rc).rfind("index,h_lower,h_exact,h_upper\n4,1,1,1\n", 0) == 0);
}

TEST_CASE("spectral path beyond the exhaustive cap") {
    Budget b;
    b.max_cheeger_vertices = 8;
    std::vector<CosetGraph> fam;
    for (int n = 6; n <= 12; ++n) fam.push_back(CosetGraph::cycle(n));
    const TauReport r = tau_family_report(fam, {}, b);
    CHECK(r.entries.front().exact.has_value());
    CHECK_FALSE(r.entries.back().exact.has_value());
    for (const auto& e : r.entries) {
        CHECK(e.lower <= ratio(2, e.vertices / 2));
        CHECK(e.upper >= ratio(2, e.vertices / 2));
    }
}
