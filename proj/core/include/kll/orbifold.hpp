#pragma once

/**
 * @file orbifold.hpp
 * @brief Combinatorial 3-orbifold data: a presentation of the complement of
 * the singular locus, the locus as a labelled graph, and meridian words.
 */

#include "kll/fpgroups.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace kll {

/// An edge of the singular locus. A closed circle component with no vertices
/// has empty `ends`.
struct LocusEdge {
    std::string id;
    std::vector<int> ends;  // {} or {u, v}; u == v is a loop
    int order = 2;
    Word meridian;
    /// Word in the manifold generators running along the edge (from ends[0] to
    /// ends[1]); only needed for the fibration check.
    std::optional<Word> core;

    bool is_circle() const { return ends.empty(); }
};

struct SingularLocus {
    int vertices = 0;
    std::vector<LocusEdge> edges;

    /// Throws InvalidArgument on bad ends, orders < 2, repeated ids or wrong valence.
    void validate() const;
    bool empty() const { return edges.empty(); }
    int index_of(const std::string& id) const;  // -1 if absent
};

struct OrbifoldData {
    Presentation manifold;
    SingularLocus locus;

    void validate() const;
};

/// A connected component of a subgraph of the locus.
struct LocusComponent {
    std::vector<int> edges;     // indices into SingularLocus::edges
    std::vector<int> vertices;
    int euler = 0;              // V - E, a vertexless circle counting as 0
    int b1 = 0;                 // E - V + 1
    bool circle = false;        // every vertex has valence 2 in the component (or no vertices)
};

struct Stratification {
    std::int64_t p = 0;
    std::vector<LocusComponent> zero;      // chi = 0
    std::vector<LocusComponent> negative;  // chi < 0
    std::vector<LocusComponent> positive;  // chi > 0 (arcs); in neither of the above
    int b1() const;
    int edge_count() const;
};

/// Components of the whole locus (p = 0 means "every edge").
std::vector<LocusComponent> components(const SingularLocus& locus, const std::vector<int>& edge_subset);
Stratification stratify(const SingularLocus& locus, std::int64_t p);
int first_betti(const SingularLocus& locus);

/// Manifold presentation plus mu_e^{n_e} for every edge.
Presentation orbifold_presentation(const OrbifoldData& data);

struct HomologyBound {
    int bound = 0;         // b1(sing_p)
    int actual = 0;        // d_p by elimination over F_p
    int actual_smith = 0;  // d_p from the Smith form over Z
    bool holds = false;
};
HomologyBound homology_lower_bound(const OrbifoldData& data, std::int64_t p);

struct DeficitReport {
    int manifold_deficit = 0;      // |R'| - |X|
    int meridian_relators = 0;     // one per circle, -3 chi(Y) per graph component
    int deficit = 0;               // |R| - |X|
    int bound = 0;                 // 2 b1(sing) - 2
    bool holds = false;
};
DeficitReport presentation_deficit(const OrbifoldData& data);

struct FibrationCheck {
    bool satisfied = false;
    std::vector<std::string> witness;         // edge ids of a chi = 0 component with phi(core) = 0
    std::vector<std::vector<std::string>> unknown_core;  // chi = 0 components lacking core words
};
/// Requires phi to kill every relator of the orbifold presentation.
FibrationCheck fibration_hypothesis(const OrbifoldData& data, const std::vector<Integer>& phi, std::int64_t p);

/// Search Hom(pi_1(O), Z) for a surjection killing the core of some chi = 0 component
/// of sing_p. Returns the homomorphism and the component's edge ids.
std::optional<std::pair<std::vector<Integer>, std::vector<std::string>>> find_fibration(const OrbifoldData& data, std::int64_t p);

/// Orbifold presentation plus the meridians (not powers) of the selected edges.
Presentation quotient_by_meridians(const OrbifoldData& data, const std::vector<std::string>& edge_ids);

struct EigenspaceReport {
    int dimension = 0;
    int dims[3] = {0, 0, 0};  // +1 eigenspaces of h1, h2, h1 h2
    bool claim_holds = false;  // some dim >= 2 when dimension >= 4
};
EigenspaceReport involution_eigenspace_analysis(const ZMatrix& h1, const ZMatrix& h2);

/// Randomised orbifold data whose manifold group is an honest complement presentation:
/// a planar trivalent graph in S^3 (free group on all faces but one, meridian = g_A g_B^-1),
/// split unknotted circles, circles running once around S^1 x S^2 summands, and lens summands.
struct RealizableOptions {
    int max_faces = 8;
    int max_split_circles = 2;
    int max_handle_circles = 2;
    int max_lens = 2;
    std::vector<int> orders = {2, 2, 3, 4, 5, 6};
};
OrbifoldData random_realizable_orbifold(std::mt19937_64& rng, const RealizableOptions& options = {});

}  // namespace kll
