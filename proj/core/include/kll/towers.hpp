#pragma once

/**
 * @file towers.hpp
 * @brief Tower bookkeeping: the vertex-count recurrence, its exponential lower
 * bound, linear growth of mod-p homology on a prefix, and Euler characteristic
 * multiplicativity.
 */

#include "kll/arith.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kll {

/// 2n - 4(log2((n+2)/3) + 1)
Interval recurrence_rhs(const Integer& n);

struct RecurrenceStep {
    int i = 0;  // 1-based index of n_i
    Integer n;
    Integer next;
    Interval rhs;
    Decision holds = Decision::Straddles;  // next >= rhs
    bool below_four = false;               // n_i < 4: the chain's log step is not justified
};
std::vector<RecurrenceStep> recurrence_check(const std::vector<Integer>& sequence);

struct TowerBoundLevel {
    int i = 0;
    Integer n;         // minimal n_i
    Rational bound;    // 2^i (1 + 24/i)
    bool holds = false;
    Rational ratio;    // n_i / 2^i
};
struct TowerBoundReport {
    std::vector<TowerBoundLevel> levels;
    Rational inf_ratio;
    bool all_hold = false;
};
/// Iterates n_{i+1} = ceil(rhs(n_i)) from n_1. Throws HypothesisViolated if n1 < 50.
TowerBoundReport tower_lower_bound(const Integer& n1, int depth);
/// 24/i - (i+5)/2^(i-1) >= 24/(i+1), exactly.
bool auxiliary_inequality(int i);
std::string tower_csv(const TowerBoundReport& report);

struct TowerRecordLevel {
    Integer degree;
    Integer d_p;
    std::optional<Integer> vertex_count;
    std::optional<Integer> chi_sing_minus;
};
struct TowerRecord {
    std::vector<TowerRecordLevel> levels;
    /// Throws InvalidArgument unless degrees are positive and strictly increasing, each dividing the next when nested.
    void validate(bool nested = true) const;
};

struct LinearGrowthReport {
    std::vector<Rational> quotients;
    Rational inf;
    bool positive = false;  // inf over the computed prefix exceeds the tolerance
};
LinearGrowthReport linear_growth_report(const TowerRecord& record, const Rational& tolerance = Rational(1, 100));

struct EulerCheck {
    bool holds = true;
    std::optional<std::size_t> witness;  // first level where chi != base * degree
};
EulerCheck euler_multiplicativity_check(const Integer& base_chi, const std::vector<std::pair<Integer, Integer>>& levels);

}  // namespace kll
