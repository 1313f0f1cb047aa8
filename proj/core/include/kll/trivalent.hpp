#pragma once

/**
 * @file trivalent.hpp
 * @brief Short cycles and small b1 = 2 subgraphs in trivalent multigraphs,
 * plus an isomorph-free generator for small connected trivalent multigraphs.
 */

#include "kll/arith.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace kll {

/// Multigraph on vertices 0..V-1; loops and parallel edges allowed. A loop adds 2 to the degree.
struct TrivalentGraph {
    int V = 0;
    std::vector<std::array<int, 2>> edges;

    /// Throws InvalidArgument unless every vertex has degree exactly 3.
    void validate() const;
    bool is_connected() const;
    int component_count() const;
    /// E - V + (number of components).
    int first_betti() const;

    static TrivalentGraph theta();
    static TrivalentGraph dumbbell();
    static TrivalentGraph complete4();
    static TrivalentGraph cube();
    static TrivalentGraph petersen();
};

struct CycleResult {
    std::vector<int> edges;     // indices into graph.edges, in cyclic order
    std::vector<int> vertices;  // visited vertices in order (one per edge)
    int root = -1;              // the centre minimising R_1
    Interval bound;             // 2 log2((V+2)/3) + 2
    bool holds = false;         // length <= bound.lo
};
/// Shortest simple closed curve found by growing balls from the best centre.
CycleResult short_cycle(const TrivalentGraph& g);

struct SubgraphResult {
    std::vector<int> edges;  // sorted edge indices
    int root = -1;
    Interval bound;          // 6 log2(b1(X) - 1) + 12
    bool holds = false;      // |edges| <= bound.lo
    std::string method;      // "ball" or "exhaustive"
};
/// Connected subgraph with b1 exactly 2. Throws FirstBettiTooSmall if b1(X) < 2.
SubgraphResult b1_two_subgraph(const TrivalentGraph& g);

/// Cycle and subgraph bounds as certified enclosures.
Interval girth_bound(int vertices);
Interval b1_two_bound(int first_betti);

/// Every simple cycle as an edge bitmask (loops and 2-cycles included). Needs E <= 64.
std::vector<std::uint64_t> simple_cycles(const TrivalentGraph& g);
/// Exact girth by cycle enumeration.
int girth_exhaustive(const TrivalentGraph& g);
/// Fewest edges in a connected subgraph with b1 = 2, by pairing cycles (thetas and handcuffs).
int min_b1_two_edges(const TrivalentGraph& g);
/// b1 of the subgraph formed by the given edges, and whether it is connected.
std::pair<int, bool> subgraph_betti(const TrivalentGraph& g, const std::vector<int>& edges);

/// Canonical string form: equal iff the multigraphs are isomorphic.
std::string canonical_form(const TrivalentGraph& g);
/// One representative per isomorphism class of connected trivalent multigraphs with
/// exactly `vertices` vertices (even, >= 2), grown from the theta graph and the dumbbell.
std::vector<TrivalentGraph> connected_trivalent_graphs(int vertices);

}  // namespace kll
