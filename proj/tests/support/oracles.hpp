#pragma once

// Small brute-force helpers shared by the unit tests.

#include "kll/poly.hpp"

#include <cstdint>
#include <algorithm>
#include <random>
#include <vector>

namespace kll::testing {

/// All monic polynomials of the given degree over F_p.
inline std::vector<FpPoly> monic_polys(std::int64_t p, int degree) {
    std::vector<FpPoly> out;
    std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 0);
    c.back() = 1;
    while (true) {
        out.emplace_back(p, c);
        std::size_t i = 0;
        while (i < static_cast<std::size_t>(degree) && ++c[i] == p) c[i++] = 0;
        if (i == static_cast<std::size_t>(degree)) break;
    }
    return out;
}

/// Factorization by trial division against monic polynomials of increasing degree.
inline std::vector<std::pair<FpPoly, int>> trial_factor(FpPoly f) {
    const std::int64_t p = f.modulus();
    f = f.monic();
    std::vector<std::pair<FpPoly, int>> out;
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        for (const auto& g : monic_polys(p, d)) {
            int mult = 0;
            while (f.degree() >= d) {
                auto [q, r] = divmod(f, g);
                if (!r.is_zero()) break;
                f = q;
                ++mult;
            }
            if (mult > 0) out.emplace_back(g, mult);
        }
    }
    if (f.degree() > 0) {
        bool merged = false;
        for (auto& pr : out)
            if (pr.first == f) {
                ++pr.second;
                merged = true;
            }
        if (!merged) out.emplace_back(f, 1);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

inline QPoly random_int_poly(std::mt19937_64& rng, int degree, long bound, bool monic) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<Rational> c;
    for (int i = 0; i < degree; ++i) c.emplace_back(dist(rng));
    long lead = 0;
    while (lead == 0) lead = monic ? 1 : dist(rng);
    c.emplace_back(lead);
    return QPoly(std::move(c));
}

}  // namespace kll::testing
