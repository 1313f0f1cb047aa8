#pragma once

/**
 * @file fpgroups.hpp
 * @brief Finitely presented groups, coset tables and mod-p homology.
 *
 * A word is a sequence of nonzero integers: +k is generator k-1, -k its
 * inverse. In text form generators are single lowercase letters and
 * capitals denote inverses ("aabAB").
 */

#include "kll/arith.hpp"
#include "kll/linalg.hpp"

#include <cstdint>
#include <map>
#include <tuple>
#include <string>
#include <vector>

namespace kll {

using Word = std::vector<int>;

Word free_reduce(const Word& w);
Word cyclically_reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word power(const Word& w, int k);

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;

    int rank() const { return static_cast<int>(generators.size()); }
    /// Free-reduce relators and drop empty and repeated ones.
    Presentation normalized() const;
    /// Parse single-letter text relators against single-letter generator names.
    static Presentation parse(const std::vector<std::string>& gens, const std::vector<std::string>& rels);
    static Presentation free_group(int rank);
    /// Text form when every generator is a single lowercase letter, else "g3^-1 g1" style.
    std::string word_to_string(const Word& w) const;
};

/// Relator exponent-sum matrix (rows = relators, columns = generators).
ZMatrix exponent_matrix(const Presentation& pres);
/// |X| - rank over F_p of the exponent matrix.
int d_p(const Presentation& pres, std::int64_t p);
/// Same quantity read off the Smith normal form over Z.
int d_p_smith(const Presentation& pres, std::int64_t p);

struct AbelianInvariants {
    int free_rank = 0;
    std::vector<Integer> torsion;  // invariant factors > 1
};
AbelianInvariants abelianization(const Presentation& pres);

/// Right action of the generators on the cosets 0..index-1 of a subgroup (coset 0 = H).
struct CosetTable {
    int index = 0;
    /// action[g][c] = coset c . g
    std::vector<std::vector<int>> action;

    int image(int coset, int letter) const;  // letter is a signed generator code
    bool is_transitive() const;
    bool relators_trivial(const Presentation& pres) const;
    /// Renumber cosets in order of first appearance (canonical form).
    CosetTable standardized() const;
    friend bool operator==(const CosetTable&, const CosetTable&) = default;
    friend bool operator<(const CosetTable& a, const CosetTable& b) { return std::tie(a.index, a.action) < std::tie(b.index, b.action); }
};

/// Throws InvalidArgument unless the table is transitive and kills every relator.
void validate_table(const Presentation& pres, const CosetTable& table);

enum class Transversal { BreadthFirst, DepthFirst };

struct SchreierResult {
    Presentation presentation;
    /// Schreier generator i corresponds to coset/generator pair (coset, gen).
    std::vector<std::pair<int, int>> generator_origin;
    int schreier_rank = 0;  // index*|X| - index + 1
};

SchreierResult reidemeister_schreier(const Presentation& pres, const CosetTable& table,
                                     Transversal strategy = Transversal::BreadthFirst);

/// Tietze reduction: drop trivial and duplicate relators and eliminate any
/// generator occurring exactly once in some relator. The result is free of
/// rank |generators| exactly when no relators remain (sufficient, not necessary).
Presentation tietze_simplify(const Presentation& pres, std::size_t max_word_length = 10000);

/// Every subgroup of index <= max_index as a standardized coset table, sorted.
/// Throws BudgetExceeded past `max_nodes` search nodes or if max_index exceeds the index cap.
std::vector<CosetTable> low_index_subgroups(const Presentation& pres, int max_index, const Budget& budget = Budget::from_environment());
/// Number of subgroups of each index 1..max_index.
std::vector<std::uint64_t> subgroup_counts(const std::vector<CosetTable>& tables, int max_index);

/// Coset table of phi^-1(iZ) for phi: G -> Z given by generator images.
CosetTable cyclic_cover_table(const Presentation& pres, const std::vector<Integer>& phi, int i);
/// Throws NotSurjective / RelatorNotKilled.
void check_homomorphism_to_z(const Presentation& pres, const std::vector<Integer>& phi, bool require_surjective);

struct TowerLevel {
    int index = 0;
    std::map<std::int64_t, int> d_p;
};
std::vector<TowerLevel> cyclic_tower(const Presentation& pres, const std::vector<Integer>& phi, int depth,
                                     const std::vector<std::int64_t>& primes);

/// Table of G_1 ∩ G_2 from tables of G_1 and G_2.
CosetTable intersect(const CosetTable& a, const CosetTable& b);

struct GolodShafarevich {
    Rational margin;  // d^2/4 - |R| + |X| - d
    bool holds = false;
};
GolodShafarevich golod_shafarevich_check(const Integer& d, const Integer& num_relators, const Integer& num_generators);

/// Enclosure of (d - 6 log2(d-1) - 12)^2 / 4 - 3d + 2 and whether it is > 0.
struct GolodShafarevichChain {
    Interval value;
    Decision positive = Decision::Straddles;
};
GolodShafarevichChain golod_shafarevich_chain(const Integer& d);

struct LargenessTriple {
    Integer index_h;        // [G : H_i]
    Integer index_j;        // [G : J_i]
    Integer d_j_mod_k;      // d(J_i / K_i)
    bool abelian = true;    // H_i / J_i abelian
};

struct LargenessOptions {
    Rational growth_threshold = 1;  // last log2[H:J]/[G:H] must reach this
    Rational decay_tolerance{1, 2};  // tail ratios must stay >= tolerance * sup
};

struct LargenessReport {
    bool condition_i = false;
    std::vector<Interval> log_ratio;   // log2[H_i:J_i] / [G:H_i]
    bool condition_ii = false;
    std::vector<Rational> d_ratio;     // d(J_i/K_i) / [G:J_i]
    Rational d_ratio_sup;
    bool condition_iii = false;
    bool all_consistent() const { return condition_i && condition_ii && condition_iii; }
};
LargenessReport largeness_conditions(const std::vector<LargenessTriple>& data, const LargenessOptions& options = {});

}  // namespace kll
