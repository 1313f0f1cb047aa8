#pragma once

/**
 * @file taugraphs.hpp
 * @brief Schreier coset graphs, Cheeger constants and finite-prefix tau checks.
 *
 * Each generator contributes one undirected edge per coset. A generator fixing
 * a coset gives a loop: it adds 2 to the degree and never lies in a boundary.
 */

#include "kll/arith.hpp"
#include "kll/finquot.hpp"
#include "kll/fpgroups.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kll {

struct CosetGraph {
    int vertices = 0;
    std::vector<std::array<int, 2>> edges;  // multi-edges and loops kept
    int generator_set_size = 0;             // |S|, 0 for graphs not built from an action

    /// Right action table (action[g][c]) of |S| generators on n points.
    static CosetGraph from_action(const std::vector<std::vector<int>>& action, int n);
    static CosetGraph from_table(const CosetTable& table) { return from_action(table.action, table.index); }
    /// Z/n with S = {1}.
    static CosetGraph cycle(int n);
    static CosetGraph complete(int n);
    /// SL(2, p) or any matrix list acting on the projective line P^1(F_p); point p is infinity.
    static CosetGraph projective_line(const MatrixSpace& space, const std::vector<Mat2F>& generators);

    void validate() const;
    std::vector<int> degrees() const;
    int max_degree() const;
    bool is_connected() const;
    bool is_regular(int d) const;
};

struct CheegerResult {
    Rational h;
    std::vector<int> witness;  // a minimizing set A
};

/// Exhaustive minimum of |dA|/|A| over 0 < |A| <= |V|/2 (Gray-code walk).
/// Throws TooLargeForExact above budget.max_cheeger_vertices.
CheegerResult cheeger_exact(const CosetGraph& g, const Budget& budget = Budget::from_environment());

/// Laplacian spectrum data; lambda2 is certified by Sturm counts on the exact
/// characteristic polynomial.
struct SpectralBounds {
    Interval lambda2;
    Rational lower;  // lambda2 / 2
    Rational upper;  // sqrt(2 d_max lambda2)
    int max_degree = 0;
};

/// Throws Disconnected; TooLargeForExact above kMaxSpectralVertices.
SpectralBounds cheeger_spectral_bounds(const CosetGraph& g);
inline constexpr int kMaxSpectralVertices = 128;

/// Exact Laplacian characteristic polynomial, constant term first.
QVector laplacian_charpoly(const CosetGraph& g);

struct TauEntry {
    int vertices = 0;
    std::optional<Rational> exact;
    Rational lower;
    Rational upper;
};

enum class TauVerdict { Consistent, TrendToZero };
std::string to_string(TauVerdict v);

struct TauReport {
    std::vector<TauEntry> entries;
    Rational inf_lower;  // infimum of the certified lower values over the prefix
    Rational inf_upper;  // infimum of the upper values
    TauVerdict verdict = TauVerdict::Consistent;
};

/// Trend rule: the upper values are non-increasing over the second half of the
/// prefix and the last one is at most `drop` times the largest lower value.
struct TauOptions {
    Rational drop = Rational(1, 2);
};

/// InvalidArgument when generator set sizes differ.
TauReport tau_family_report(const std::vector<CosetGraph>& graphs, const TauOptions& opts = {},
                            const Budget& budget = Budget::from_environment());

/// (index, h_lower, h_exact, h_upper) rows; h_exact empty when not computed.
std::string tau_csv(const TauReport& report);

}  // namespace kll
