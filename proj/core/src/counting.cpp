#include "kll/counting.hpp"

#include "kll/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace kll {

// ---------------------------------------------------------------------------
// IndexedGroup

IndexedGroup::IndexedGroup(FiniteMatrixGroup group) : group_(std::move(group)) {
    n_ = static_cast<std::uint32_t>(group_.order());
    id_ = static_cast<std::uint32_t>(group_.index_of(group_.space().identity()));
    if (n_ <= 4096) {
        table_.resize(static_cast<std::size_t>(n_) * n_);
        std::vector<Mat2F> el(n_);
        for (std::uint32_t i = 0; i < n_; ++i) el[i] = group_.element(i);
        for (std::uint32_t i = 0; i < n_; ++i)
            for (std::uint32_t j = 0; j < n_; ++j)
                table_[static_cast<std::size_t>(i) * n_ + j] =
                    static_cast<std::uint16_t>(group_.index_of(group_.space().mul(el[i], el[j])));
    }
    inv_.resize(n_);
    ord_.resize(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
        inv_[i] = index_of(group_.space().inverse(group_.element(i)));
        std::uint32_t k = 1, x = i;
        while (x != id_) {
            x = mul(x, i);
            ++k;
        }
        ord_[i] = k;
    }
}

std::uint32_t IndexedGroup::mul(std::uint32_t a, std::uint32_t b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * n_ + b];
    return index_of(group_.space().mul(group_.element(a), group_.element(b)));
}

std::uint32_t IndexedGroup::index_of(const Mat2F& x) const {
    const std::int64_t i = group_.index_of(x);
    if (i < 0) throw InvalidArgument("matrix is not an element of the group");
    return static_cast<std::uint32_t>(i);
}

// ---------------------------------------------------------------------------
// ElementSet

bool ElementSet::subset_of(const ElementSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

std::uint32_t ElementSet::size() const {
    std::uint32_t s = 0;
    for (std::uint64_t w : words_) s += static_cast<std::uint32_t>(__builtin_popcountll(w));
    return s;
}

std::vector<std::uint32_t> ElementSet::elements() const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w) {
            out.push_back(static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(__builtin_ctzll(w))));
            w &= w - 1;
        }
    }
    return out;
}

namespace {

struct SetHash {
    std::size_t operator()(const ElementSet& s) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::uint64_t w : s.words()) h = (h ^ w) * 1099511628211ULL;
        return static_cast<std::size_t>(h);
    }
};

// <H, gens> as a union of right cosets of H. `h_elems` lists H.
ElementSet extend(const IndexedGroup& g, const ElementSet& h, const std::vector<std::uint32_t>& h_elems,
                  const std::vector<std::uint32_t>& gens) {
    ElementSet k = h;
    std::vector<std::uint32_t> reps{g.identity()};
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::uint32_t s : gens) {
            const std::uint32_t y = g.mul(reps[i], s);
            if (k.contains(y)) continue;
            for (std::uint32_t x : h_elems) k.insert(g.mul(x, y));
            reps.push_back(y);
        }
    return k;
}

ElementSet cyclic(const IndexedGroup& g, std::uint32_t x) {
    ElementSet s(g.order());
    std::uint32_t y = g.identity();
    do {
        s.insert(y);
        y = g.mul(y, x);
    } while (y != g.identity());
    return s;
}

bool is_prime_power(std::uint32_t n) {
    if (n < 2) return false;
    std::uint32_t p = 2;
    while (n % p) ++p;
    while (n % p == 0) n /= p;
    return n == 1;
}

// Try every d-subset of `cands`; true if one generates a set of the target size.
bool generated_by(const IndexedGroup& g, const std::vector<std::uint32_t>& cands, int d, std::uint32_t target) {
    const std::size_t m = cands.size();
    if (static_cast<std::size_t>(d) > m) return false;
    std::vector<std::size_t> idx(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
    const ElementSet trivial = [&] {
        ElementSet t(g.order());
        t.insert(g.identity());
        return t;
    }();
    const std::vector<std::uint32_t> trivial_elems{g.identity()};
    for (;;) {
        std::vector<std::uint32_t> gens;
        for (std::size_t i : idx) gens.push_back(cands[i]);
        if (extend(g, trivial, trivial_elems, gens).size() == target) return true;
        int i = d - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - static_cast<std::size_t>(d - i)) --i;
        if (i < 0) return false;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < d; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

ElementSet generated_subgroup(const IndexedGroup& g, const std::vector<std::uint32_t>& gens) {
    ElementSet t(g.order());
    t.insert(g.identity());
    return extend(g, t, {g.identity()}, gens);
}

// ---------------------------------------------------------------------------
// Census

int FiniteGroupCensus::rank() const {
    int r = 0;
    for (const auto& s : subgroups) r = std::max(r, s.min_generators);
    return r;
}

std::map<std::uint64_t, std::uint64_t> FiniteGroupCensus::count_by_index() const {
    std::map<std::uint64_t, std::uint64_t> out;
    for (const auto& s : subgroups) ++out[group->order() / s.order];
    return out;
}

std::uint64_t FiniteGroupCensus::minimal_proper_index() const {
    std::uint64_t best = 0;
    for (const auto& s : subgroups)
        if (s.order < group->order()) {
            const std::uint64_t idx = group->order() / s.order;
            if (best == 0 || idx < best) best = idx;
        }
    return best;
}

FiniteMatrixGroup sl2_mod(std::int64_t m, const Budget& budget) {
    return FiniteMatrixGroup::full(MatrixSpace(FiniteRing::integers_mod(m), false), budget);
}

FiniteMatrixGroup sl2_field(std::int64_t p, int degree, const Budget& budget) {
    return FiniteMatrixGroup::full(MatrixSpace(FiniteRing::field(p, degree), false), budget);
}

FiniteGroupCensus subgroup_census(const FiniteMatrixGroup& group, const Budget& budget) {
    if (group.order() > budget.max_census_order)
        throw BudgetExceeded("group of order " + std::to_string(group.order()) + " exceeds the census cap of " +
                             std::to_string(budget.max_census_order));
    auto g = std::make_shared<const IndexedGroup>(group);
    const std::uint32_t n = g->order();

    // cyclic subgroups, one generator each
    std::unordered_map<ElementSet, std::uint32_t, SetHash> cyc_index;
    std::vector<ElementSet> cyc;
    std::vector<std::uint32_t> cyc_gen;
    for (std::uint32_t x = 0; x < n; ++x) {
        ElementSet c = cyclic(*g, x);
        if (cyc_index.emplace(c, static_cast<std::uint32_t>(cyc.size())).second) {
            cyc.push_back(std::move(c));
            cyc_gen.push_back(x);
        }
    }
    std::vector<std::uint32_t> ext;  // prime-power order generators
    for (std::size_t i = 0; i < cyc.size(); ++i)
        if (is_prime_power(g->element_order(cyc_gen[i]))) ext.push_back(static_cast<std::uint32_t>(i));

    std::vector<SubgroupRecord> subs;
    std::unordered_map<ElementSet, std::size_t, SetHash> seen;
    {
        SubgroupRecord t;
        t.elements = ElementSet(n);
        t.elements.insert(g->identity());
        t.order = 1;
        seen.emplace(t.elements, 0);
        subs.push_back(std::move(t));
    }
    std::uint64_t work = 0;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const ElementSet h = subs[i].elements;
        const std::vector<std::uint32_t> h_elems = h.elements();
        const std::vector<std::uint32_t> h_gens = subs[i].generators;
        for (std::uint32_t c : ext) {
            if (h.contains(cyc_gen[c])) continue;
            std::vector<std::uint32_t> gens = h_gens;
            gens.push_back(cyc_gen[c]);
            ElementSet k = extend(*g, h, h_elems, gens);
            work += k.size();
            if (work > budget.max_nodes * 100)
                throw BudgetExceeded("census work exceeds the node cap");
            if (seen.count(k)) continue;
            SubgroupRecord rec;
            rec.order = k.size();
            rec.generators = std::move(gens);
            rec.elements = k;
            seen.emplace(std::move(k), subs.size());
            subs.push_back(std::move(rec));
        }
    }

    // d(H): search over maximal cyclic subgroups of H
    for (auto& s : subs) {
        if (s.order == 1) {
            s.min_generators = 0;
            continue;
        }
        if (cyc_index.count(s.elements)) {
            s.min_generators = 1;
            continue;
        }
        std::vector<std::uint32_t> inside;
        for (std::size_t c = 0; c < cyc.size(); ++c)
            if (cyc[c].subset_of(s.elements)) inside.push_back(static_cast<std::uint32_t>(c));
        std::vector<std::uint32_t> maximal;
        for (std::uint32_t c : inside) {
            bool is_max = true;
            for (std::uint32_t e : inside)
                if (e != c && cyc[e].size() > cyc[c].size() && cyc[c].subset_of(cyc[e])) {
                    is_max = false;
                    break;
                }
            if (is_max) maximal.push_back(cyc_gen[c]);
        }
        const int upper = static_cast<int>(s.generators.size());
        int d = 2;
        while (d < upper && !generated_by(*g, maximal, d, s.order)) ++d;
        s.min_generators = std::max(2, std::min(d, upper));
    }

    std::sort(subs.begin(), subs.end(), [](const SubgroupRecord& a, const SubgroupRecord& b) {
        return a.order != b.order ? a.order < b.order : a.elements < b.elements;
    });
    FiniteGroupCensus census;
    census.group = std::move(g);
    census.subgroups = std::move(subs);
    return census;
}

int d2_abelianization(const IndexedGroup& g) {
    std::vector<std::uint32_t> squares;
    std::vector<char> have(g.order(), 0);
    for (std::uint32_t x = 0; x < g.order(); ++x) {
        const std::uint32_t s = g.mul(x, x);
        if (!have[s]) {
            have[s] = 1;
            squares.push_back(s);
        }
    }
    std::uint32_t q = g.order() / generated_subgroup(g, squares).size();
    int d = 0;
    while (q > 1) {
        q /= 2;
        ++d;
    }
    return d;
}

RankCheck rank_bound_check(const FiniteGroupCensus& census, int field_degree) {
    RankCheck r;
    r.rank = census.rank();
    r.bound = 3 * field_degree;
    r.holds = r.rank <= r.bound;
    return r;
}

// ---------------------------------------------------------------------------
// Levels

std::vector<std::int64_t> divisors(std::int64_t m) {
    if (m < 1) throw InvalidArgument("divisors of a non-positive integer");
    std::vector<std::int64_t> d;
    for (std::int64_t i = 1; i * i <= m; ++i)
        if (m % i == 0) {
            d.push_back(i);
            if (i * i != m) d.push_back(m / i);
        }
    std::sort(d.begin(), d.end());
    return d;
}

ElementSet congruence_kernel(const IndexedGroup& g, std::int64_t m, std::int64_t level) {
    const FiniteRing& r = g.group().space().ring();
    if (r.degree() != 1 || r.size() != m || g.group().space().projective())
        throw InvalidArgument("congruence kernels need SL(2, Z/" + std::to_string(m) + ")");
    if (level < 1 || m % level) throw InvalidArgument(std::to_string(level) + " does not divide " + std::to_string(m));
    ElementSet k(g.order());
    for (std::uint32_t i = 0; i < g.order(); ++i) {
        const Mat2F x = g.group().element(i);
        if ((x.e[0] - 1) % level == 0 && x.e[1] % level == 0 && x.e[2] % level == 0 && (x.e[3] - 1) % level == 0)
            k.insert(i);
    }
    return k;
}

bool is_exceptional_prime(std::int64_t q) { return q == 2 || q == 3 || q == 5 || q == 7 || q == 11; }

EssentialReport essential_subgroups(std::int64_t m, const FiniteGroupCensus& census) {
    const IndexedGroup& g = *census.group;
    EssentialReport rep;
    rep.modulus = m;
    std::vector<ElementSet> kernels;
    for (std::int64_t l : divisors(m))
        if (l != m) kernels.push_back(congruence_kernel(g, m, l));
    for (std::size_t i = 0; i < census.subgroups.size(); ++i) {
        const auto& s = census.subgroups[i];
        bool essential = true;
        for (const auto& k : kernels) essential = essential && !k.subset_of(s.elements);
        if (!essential) continue;
        rep.essential.push_back(i);
        const std::uint64_t idx = g.order() / s.order;
        if (rep.minimal_index == 0 || idx < rep.minimal_index) rep.minimal_index = idx;
    }
    rep.index_over_norm = ratio(static_cast<long>(rep.minimal_index), static_cast<long>(m));
    if (is_prime(m)) {
        rep.exceptional_prime = is_exceptional_prime(m);
        rep.matches_q_plus_one = rep.minimal_index == static_cast<std::uint64_t>(m + 1);
    }
    return rep;
}

LevelCheck level_vs_index_check(const IndexedGroup& g, std::int64_t m, const ElementSet& subgroup, const Rational& c) {
    LevelCheck out;
    const std::uint32_t order = subgroup.size();
    if (order == 0 || g.order() % order) throw InvalidArgument("element set is not a subgroup");
    out.index = g.order() / order;
    for (std::int64_t l : divisors(m))
        if (congruence_kernel(g, m, l).subset_of(subgroup)) {
            out.level = l;
            break;
        }
    out.minimal_constant = ratio(static_cast<long>(out.level), static_cast<long>(out.index));
    out.holds = Rational(out.level) <= c * static_cast<long>(out.index);
    return out;
}

// ---------------------------------------------------------------------------
// Growth

namespace {

Interval ln_interval(const Interval& x) { return {ln_enclosure(x.lo).lo, ln_enclosure(x.hi).hi}; }

// Quotient of positive intervals.
Interval divide_positive(const Interval& a, const Interval& b) { return {a.lo / b.hi, a.hi / b.lo}; }

Interval exp_interval(const Interval& x) {
    const Interval ln2 = ln_enclosure(Rational(2));
    const Interval e = x.lo >= 0 ? divide_positive(x, ln2) : Interval{x.lo / ln2.lo, x.hi / ln2.hi};
    return {exp2_enclosure(e.lo).lo, exp2_enclosure(e.hi).hi};
}

// n^(b L / LL) with L = ln n, LL = ln ln n; n >= 3.
Interval curve_value(std::uint64_t n, const Rational& b) {
    const Interval l = ln_enclosure(Rational(static_cast<unsigned long>(n)));
    const Interval ll = ln_interval(l);
    return exp_interval(divide_positive(b * square(l), ll));
}

}  // namespace

GrowthTable sn_vs_cn_table(const TowerRecord& d2_tower, const std::vector<std::int64_t>& m_range,
                           const std::vector<std::uint64_t>& sample_n, const Budget& budget) {
    if (d2_tower.levels.empty()) throw InvalidArgument("tower has no levels");
    GrowthTable t;
    t.lambda = ratio(d2_tower.levels[0].d_p, d2_tower.levels[0].degree);
    for (const auto& lv : d2_tower.levels) {
        if (lv.degree <= 0) throw InvalidArgument("tower degrees must be positive");
        t.lambda = std::min(t.lambda, ratio(lv.d_p, lv.degree));
    }
    if (t.lambda <= 0) throw HypothesisViolated("inf d_2 / degree is 0 on the tower");

    // subgroup counts by index for each SL(2, Z/m)
    std::vector<std::pair<std::int64_t, std::map<std::uint64_t, std::uint64_t>>> counts;
    for (std::int64_t m : m_range) counts.emplace_back(m, subgroup_census(sl2_mod(m, budget), budget).count_by_index());

    Rational b(0);
    for (std::uint64_t n : sample_n) {
        GrowthRow row;
        row.n = n;
        row.sn_lower = exp2_enclosure(t.lambda * static_cast<unsigned long>(n)) - Rational(1);
        for (const auto& [m, by_index] : counts) {
            if (static_cast<std::uint64_t>(m) > n) continue;
            for (const auto& [idx, c] : by_index)
                if (idx <= n) row.census_cn += c;
        }
        if (n >= 3 && row.census_cn > 1) {
            // b >= ln c * LL / L^2
            const Interval l = ln_enclosure(Rational(static_cast<unsigned long>(n)));
            const Interval need =
                divide_positive(ln_enclosure(Rational(static_cast<unsigned long>(row.census_cn))) * ln_interval(l), square(l));
            b = std::max(b, need.hi);
        }
        t.rows.push_back(std::move(row));
    }
    t.b = ratio(ceil(b * 1000), 1000);
    for (auto& row : t.rows)
        if (row.n >= 3) row.curve = curve_value(row.n, t.b);
    return t;
}

std::string growth_csv(const GrowthTable& table) {
    std::ostringstream os;
    os << "n,sn_lower,census_cn,curve_upper\n";
    for (const auto& r : table.rows) {
        os << r.n << ',' << floor(r.sn_lower.lo).get_str() << ',' << r.census_cn << ',';
        if (r.curve) os << ceil(r.curve->hi).get_str();
        os << '\n';
    }
    return os.str();
}

bool subgroup_count_within_rank_bound(const FiniteGroupCensus& census) {
    const Integer bound = ipow(Integer(static_cast<unsigned long>(census.group->order())),
                               static_cast<unsigned long>(census.rank()));
    return Integer(static_cast<unsigned long>(census.count())) <= bound;
}

OmegaReport omega_constant(std::int64_t limit) {
    if (limit < 3) throw InvalidArgument("limit must be at least 3");
    std::vector<std::uint8_t> omega(static_cast<std::size_t>(limit) + 1, 0);
    for (std::int64_t p = 2; p <= limit; ++p)
        if (omega[static_cast<std::size_t>(p)] == 0)
            for (std::int64_t k = p; k <= limit; k += p) ++omega[static_cast<std::size_t>(k)];
    OmegaReport r;
    for (std::int64_t m = 3; m <= limit; ++m) {
        const double lm = std::log(static_cast<double>(m));
        const double c = omega[static_cast<std::size_t>(m)] * std::log(lm) / lm;
        if (c > r.max_constant) {
            r.max_constant = c;
            r.argmax = m;
        }
    }
    return r;
}

Presentation free_product_z2(int k) {
    if (k < 1 || k > 26) throw InvalidArgument("free product needs 1..26 factors");
    Presentation p;
    for (int i = 0; i < k; ++i) {
        p.generators.emplace_back(1, static_cast<char>('a' + i));
        p.relators.push_back({i + 1, i + 1});
    }
    return p;
}

CosetTable parity_table(int k) {
    CosetTable t;
    t.index = 2;
    t.action.assign(static_cast<std::size_t>(k), {1, 0});
    return t;
}

}  // namespace kll
