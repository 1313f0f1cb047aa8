#include "kll/towers.hpp"

#include "kll/error.hpp"

#include <algorithm>
#include <sstream>

namespace kll {

namespace {

Interval rhs_with_bits(const Integer& n, unsigned bits) {
    const Interval lg = log2_enclosure(ratio(n + 2, 3), bits);
    return Interval::point(Rational(2 * n)) - Rational(4) * (lg + Rational(1));
}

// Exact ceiling of the (generally irrational) recurrence value.
Integer ceil_rhs(const Integer& n) {
    for (unsigned bits = kDyadicBits; bits <= 4096; bits *= 2) {
        const Interval r = rhs_with_bits(n, bits);
        if (r.lo == r.hi) return ceil(r.lo);
        const Integer a = ceil(r.lo), b = ceil(r.hi);
        if (a == b && r.lo != a) return a;  // lo < value <= hi share one ceiling
    }
    throw Error("could not separate the recurrence value from an integer");
}

}  // namespace

Interval recurrence_rhs(const Integer& n) {
    if (n < 1) throw InvalidArgument("vertex counts must be positive");
    return rhs_with_bits(n, kDyadicBits);
}

std::vector<RecurrenceStep> recurrence_check(const std::vector<Integer>& sequence) {
    std::vector<RecurrenceStep> out;
    for (std::size_t k = 0; k + 1 < sequence.size(); ++k) {
        RecurrenceStep s;
        s.i = static_cast<int>(k) + 1;
        s.n = sequence[k];
        s.next = sequence[k + 1];
        s.rhs = recurrence_rhs(s.n);
        s.holds = s.rhs.at_most(Rational(s.next));
        s.below_four = s.n < 4;
        out.push_back(std::move(s));
    }
    return out;
}

TowerBoundReport tower_lower_bound(const Integer& n1, int depth) {
    if (n1 < 50) throw HypothesisViolated("n_1 = " + n1.get_str() + " < 50");
    if (depth < 1) throw InvalidArgument("depth must be positive");
    TowerBoundReport rep;
    rep.all_hold = true;
    Integer n = n1;
    for (int i = 1; i <= depth; ++i) {
        TowerBoundLevel l;
        l.i = i;
        l.n = n;
        const Integer pow2 = ipow(2, static_cast<unsigned long>(i));
        l.bound = Rational(pow2) * (1 + ratio(24, i));
        l.holds = Rational(n) >= l.bound;
        l.ratio = ratio(n, pow2);
        rep.all_hold = rep.all_hold && l.holds;
        rep.inf_ratio = i == 1 ? l.ratio : std::min(rep.inf_ratio, l.ratio);
        rep.levels.push_back(std::move(l));
        n = ceil_rhs(n);
    }
    return rep;
}

bool auxiliary_inequality(int i) {
    if (i < 1) throw InvalidArgument("index must be positive");
    const Rational lhs = ratio(24, i) - Rational(i + 5) / Rational(ipow(2, static_cast<unsigned long>(i - 1)));
    return lhs >= ratio(24, i + 1);
}

std::string tower_csv(const TowerBoundReport& report) {
    std::ostringstream os;
    os << "i,n_i,bound_i,quotient_i\n";
    for (const auto& l : report.levels)
        os << l.i << ',' << l.n.get_str() << ',' << to_string(l.bound) << ',' << to_string(l.ratio) << '\n';
    return os.str();
}

void TowerRecord::validate(bool nested) const {
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (levels[k].degree < 1) throw InvalidArgument("degrees must be positive");
        if (levels[k].d_p < 0) throw InvalidArgument("d_p must be nonnegative");
        if (k == 0) continue;
        if (levels[k].degree <= levels[k - 1].degree) throw InvalidArgument("degrees must be strictly increasing");
        if (nested && levels[k].degree % levels[k - 1].degree != 0) throw InvalidArgument("degrees of a nested tower must divide each other");
    }
}

LinearGrowthReport linear_growth_report(const TowerRecord& record, const Rational& tolerance) {
    if (record.levels.empty()) throw InvalidArgument("empty tower record");
    record.validate(false);
    LinearGrowthReport r;
    for (const auto& l : record.levels) {
        r.quotients.push_back(ratio(l.d_p, l.degree));
    }
    r.inf = *std::min_element(r.quotients.begin(), r.quotients.end());
    r.positive = r.inf > tolerance;
    return r;
}

EulerCheck euler_multiplicativity_check(const Integer& base_chi, const std::vector<std::pair<Integer, Integer>>& levels) {
    EulerCheck c;
    for (std::size_t k = 0; k < levels.size(); ++k)
        if (levels[k].second != base_chi * levels[k].first) {
            c.holds = false;
            c.witness = k;
            break;
        }
    return c;
}

}  // namespace kll
