#pragma once

/**
 * @file counting.hpp
 * @brief Subgroup censuses of small matrix groups and the subgroup-growth bounds built on them.
 */

#include "kll/arith.hpp"
#include "kll/finquot.hpp"
#include "kll/fpgroups.hpp"
#include "kll/towers.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kll {

/// A FiniteMatrixGroup with elements renumbered 0..N-1 and cached products.
class IndexedGroup {
public:
    explicit IndexedGroup(FiniteMatrixGroup group);

    const FiniteMatrixGroup& group() const { return group_; }
    std::uint32_t order() const { return n_; }
    std::uint32_t identity() const { return id_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inverse(std::uint32_t a) const { return inv_[a]; }
    std::uint32_t element_order(std::uint32_t a) const { return ord_[a]; }
    std::uint32_t index_of(const Mat2F& x) const;

private:
    FiniteMatrixGroup group_;
    std::uint32_t n_ = 0;
    std::uint32_t id_ = 0;
    std::vector<std::uint16_t> table_;  // n*n products when n <= 4096
    std::vector<std::uint32_t> inv_, ord_;
};

/// Fixed-width element set.
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(std::uint32_t n) : n_(n), words_((n + 63) / 64, 0) {}
    void insert(std::uint32_t x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
    bool contains(std::uint32_t x) const { return (words_[x >> 6] >> (x & 63)) & 1U; }
    bool subset_of(const ElementSet& o) const;
    std::uint32_t size() const;
    std::vector<std::uint32_t> elements() const;
    const std::vector<std::uint64_t>& words() const { return words_; }
    friend bool operator==(const ElementSet& a, const ElementSet& b) { return a.words_ == b.words_; }
    friend bool operator<(const ElementSet& a, const ElementSet& b) { return a.words_ < b.words_; }

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Subgroup generated by the listed elements.
ElementSet generated_subgroup(const IndexedGroup& g, const std::vector<std::uint32_t>& gens);

struct SubgroupRecord {
    ElementSet elements;
    std::uint32_t order = 0;
    std::vector<std::uint32_t> generators;  // as found by the extension chain
    int min_generators = 0;                 // d(H)
};

struct FiniteGroupCensus {
    std::shared_ptr<const IndexedGroup> group;
    std::vector<SubgroupRecord> subgroups;  // sorted by (order, element set)

    std::size_t count() const { return subgroups.size(); }
    int rank() const;
    /// Number of subgroups of each index.
    std::map<std::uint64_t, std::uint64_t> count_by_index() const;
    /// Index of the largest proper subgroup (0 for the trivial group).
    std::uint64_t minimal_proper_index() const;
};

/// All subgroups by cyclic extension from the trivial group, extending only by
/// elements of prime-power order; d(H) by search over maximal cyclic subgroups
/// of H. BudgetExceeded when |G| > budget.max_census_order.
FiniteGroupCensus subgroup_census(const FiniteMatrixGroup& group, const Budget& budget = Budget::from_environment());
/// SL(2, Z/m) (m composite or prime) without the projective quotient.
FiniteMatrixGroup sl2_mod(std::int64_t m, const Budget& budget = Budget::from_environment());
FiniteMatrixGroup sl2_field(std::int64_t p, int degree = 1, const Budget& budget = Budget::from_environment());

/// dim over F_2 of G/<x^2 : x in G>, computed without the census.
int d2_abelianization(const IndexedGroup& g);

struct RankCheck {
    int rank = 0;
    int bound = 0;  // 3d
    bool holds = false;
};
RankCheck rank_bound_check(const FiniteGroupCensus& census, int field_degree = 1);

// --------------------------------------------------------------------------
// Levels over Z

/// Kernel of SL(2, Z/m) -> SL(2, Z/l) for l | m, as an element set of the census group.
ElementSet congruence_kernel(const IndexedGroup& g, std::int64_t m, std::int64_t level);
std::vector<std::int64_t> divisors(std::int64_t m);

struct EssentialReport {
    std::int64_t modulus = 0;
    std::vector<std::size_t> essential;  // census positions
    std::uint64_t minimal_index = 0;     // 0 if none
    Rational index_over_norm;            // minimal_index / m
    /// Prime moduli only: expected q+1 unless q is one of 2, 3, 5, 7, 11.
    std::optional<bool> exceptional_prime;
    std::optional<bool> matches_q_plus_one;
};

/// Subgroups of SL(2, Z/m) containing no kernel M(l) for a proper divisor l of m
/// (l = 1 included, so the whole group is never essential).
EssentialReport essential_subgroups(std::int64_t m, const FiniteGroupCensus& census);
bool is_exceptional_prime(std::int64_t q);

struct LevelCheck {
    std::int64_t level = 0;  // minimal l | m with M(l) inside H
    std::uint64_t index = 0;
    Rational minimal_constant;  // level / index
    bool holds = false;         // level <= c * index
};
LevelCheck level_vs_index_check(const IndexedGroup& g, std::int64_t m, const ElementSet& subgroup,
                                const Rational& c = Rational(1));

// --------------------------------------------------------------------------
// s_n versus c_n

struct GrowthRow {
    std::uint64_t n = 0;
    Interval sn_lower;          // 2^(lambda n) - 1
    std::uint64_t census_cn = 0;  // sum over m <= n in range of #{H : [G:H] <= n}
    std::optional<Interval> curve;  // n^(b log n / log log n), n >= 3
};

struct GrowthTable {
    Rational lambda;  // inf d_2 / degree over the tower
    Rational b;       // smallest sampled b with census_cn <= curve, rounded up to 1/1000
    std::vector<GrowthRow> rows;
};

/// InvalidArgument for an empty tower, HypothesisViolated when lambda = 0.
GrowthTable sn_vs_cn_table(const TowerRecord& d2_tower, const std::vector<std::int64_t>& m_range,
                           const std::vector<std::uint64_t>& sample_n, const Budget& budget = Budget::from_environment());
std::string growth_csv(const GrowthTable& table);

/// |{H <= G}| <= |G|^rank(G).
bool subgroup_count_within_rank_bound(const FiniteGroupCensus& census);

/// max over 3 <= m <= limit of omega(m) log log m / log m (distinct prime factors).
struct OmegaReport {
    double max_constant = 0;
    std::int64_t argmax = 0;
};
OmegaReport omega_constant(std::int64_t limit);

/// Free product of k copies of Z/2 and its index-2 kernel (every generator odd).
Presentation free_product_z2(int k);
CosetTable parity_table(int k);

}  // namespace kll
