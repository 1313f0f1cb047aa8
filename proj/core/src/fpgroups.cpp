#include "kll/fpgroups.hpp"

#include "kll/error.hpp"
#include "kll/linalg.hpp"
#include "kll/poly.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <queue>
#include <set>

namespace kll {

Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (int l : w) {
        if (l == 0) throw InvalidArgument("word letter 0");
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word cyclically_reduce(const Word& w) {
    Word r = free_reduce(w);
    std::size_t i = 0, j = r.size();
    while (j - i >= 2 && r[i] == -r[j - 1]) {
        ++i;
        --j;
    }
    return Word(r.begin() + static_cast<long>(i), r.begin() + static_cast<long>(j));
}

Word inverse(const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (int& l : r) l = -l;
    return r;
}

Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return free_reduce(r);
}

Word power(const Word& w, int k) {
    const Word base = k >= 0 ? w : inverse(w);
    Word r;
    for (int i = 0; i < std::abs(k); ++i) r.insert(r.end(), base.begin(), base.end());
    return free_reduce(r);
}

Presentation Presentation::normalized() const {
    Presentation out{generators, {}};
    std::set<Word> seen;
    for (const Word& r : relators) {
        Word w = free_reduce(r);
        if (w.empty()) continue;
        if (seen.insert(w).second) out.relators.push_back(std::move(w));
    }
    return out;
}

Presentation Presentation::parse(const std::vector<std::string>& gens, const std::vector<std::string>& rels) {
    if (gens.empty()) throw InvalidArgument("presentation needs at least one generator");
    Presentation p;
    std::map<char, int> index;
    for (const std::string& g : gens) {
        if (g.size() != 1 || !std::islower(static_cast<unsigned char>(g[0])))
            throw InvalidArgument("generator names must be single lowercase letters, got '" + g + "'");
        if (!index.emplace(g[0], static_cast<int>(index.size()) + 1).second)
            throw InvalidArgument("duplicate generator '" + g + "'");
        p.generators.push_back(g);
    }
    for (const std::string& r : rels) {
        Word w;
        for (char ch : r) {
            const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            auto it = index.find(lower);
            if (it == index.end()) throw InvalidArgument("unknown letter '" + std::string(1, ch) + "' in relator " + r);
            w.push_back(std::isupper(static_cast<unsigned char>(ch)) ? -it->second : it->second);
        }
        p.relators.push_back(w);
    }
    return p.normalized();
}

Presentation Presentation::free_group(int rank) {
    if (rank < 1) throw InvalidArgument("free group rank must be positive");
    Presentation p;
    for (int i = 0; i < rank; ++i)
        p.generators.push_back(rank <= 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i + 1));
    return p;
}

std::string Presentation::word_to_string(const Word& w) const {
    const bool letters = std::all_of(generators.begin(), generators.end(), [](const std::string& g) {
        return g.size() == 1 && std::islower(static_cast<unsigned char>(g[0]));
    });
    std::string s;
    for (int l : w) {
        const std::string& g = generators.at(static_cast<std::size_t>(std::abs(l) - 1));
        if (letters) {
            s += l > 0 ? g[0] : static_cast<char>(std::toupper(static_cast<unsigned char>(g[0])));
        } else {
            if (!s.empty()) s += ' ';
            s += g;
            if (l < 0) s += "^-1";
        }
    }
    return s;
}

ZMatrix exponent_matrix(const Presentation& pres) {
    ZMatrix m(pres.relators.size(), std::vector<Integer>(static_cast<std::size_t>(pres.rank()), 0));
    for (std::size_t i = 0; i < pres.relators.size(); ++i)
        for (int l : pres.relators[i]) m[i][static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
    return m;
}

int d_p(const Presentation& pres, std::int64_t p) {
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    if (pres.relators.empty()) return pres.rank();
    return pres.rank() - static_cast<int>(rank_mod_p(exponent_matrix(pres), p));
}

int d_p_smith(const Presentation& pres, std::int64_t p) {
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    if (pres.relators.empty()) return pres.rank();
    const auto inv = smith_invariants(exponent_matrix(pres));
    int d = pres.rank() - static_cast<int>(inv.size());
    for (const Integer& f : inv)
        if (f % p == 0) ++d;
    return d;
}

AbelianInvariants abelianization(const Presentation& pres) {
    AbelianInvariants a;
    if (pres.relators.empty()) {
        a.free_rank = pres.rank();
        return a;
    }
    const auto inv = smith_invariants(exponent_matrix(pres));
    a.free_rank = pres.rank() - static_cast<int>(inv.size());
    for (const Integer& f : inv)
        if (abs(f) > 1) a.torsion.push_back(abs(f));
    return a;
}

// ---------------------------------------------------------------------------
// Coset tables

namespace {

// Inverse permutations of every generator.
std::vector<std::vector<int>> inverse_action(const CosetTable& t) {
    std::vector<std::vector<int>> inv(t.action.size(), std::vector<int>(static_cast<std::size_t>(t.index), -1));
    for (std::size_t g = 0; g < t.action.size(); ++g)
        for (int c = 0; c < t.index; ++c) inv[g][static_cast<std::size_t>(t.action[g][static_cast<std::size_t>(c)])] = c;
    return inv;
}

void check_shape(const CosetTable& t) {
    if (t.index < 1) throw InvalidArgument("coset table index must be positive");
    for (const auto& perm : t.action) {
        if (perm.size() != static_cast<std::size_t>(t.index)) throw InvalidArgument("coset table row has wrong length");
        std::vector<char> hit(perm.size(), 0);
        for (int v : perm) {
            if (v < 0 || v >= t.index || hit[static_cast<std::size_t>(v)]) throw InvalidArgument("coset table row is not a permutation");
            hit[static_cast<std::size_t>(v)] = 1;
        }
    }
}

}  // namespace

int CosetTable::image(int coset, int letter) const {
    const auto g = static_cast<std::size_t>(std::abs(letter) - 1);
    if (letter > 0) return action.at(g).at(static_cast<std::size_t>(coset));
    const auto& perm = action.at(g);
    for (int c = 0; c < index; ++c)
        if (perm[static_cast<std::size_t>(c)] == coset) return c;
    throw InvalidArgument("coset table row is not a permutation");
}

bool CosetTable::is_transitive() const {
    std::vector<char> seen(static_cast<std::size_t>(index), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    const auto inv = inverse_action(*this);
    int count = 1;
    while (!stack.empty()) {
        const int c = stack.back();
        stack.pop_back();
        for (std::size_t g = 0; g < action.size(); ++g)
            for (int d : {action[g][static_cast<std::size_t>(c)], inv[g][static_cast<std::size_t>(c)]})
                if (!seen[static_cast<std::size_t>(d)]) {
                    seen[static_cast<std::size_t>(d)] = 1;
                    ++count;
                    stack.push_back(d);
                }
    }
    return count == index;
}

bool CosetTable::relators_trivial(const Presentation& pres) const {
    const auto inv = inverse_action(*this);
    for (const Word& r : pres.relators)
        for (int c = 0; c < index; ++c) {
            int d = c;
            for (int l : r) {
                const auto g = static_cast<std::size_t>(std::abs(l) - 1);
                d = l > 0 ? action[g][static_cast<std::size_t>(d)] : inv[g][static_cast<std::size_t>(d)];
            }
            if (d != c) return false;
        }
    return true;
}

CosetTable CosetTable::standardized() const {
    const auto inv = inverse_action(*this);
    std::vector<int> relabel(static_cast<std::size_t>(index), -1), order{0};
    relabel[0] = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto c = static_cast<std::size_t>(order[k]);
        for (std::size_t g = 0; g < action.size(); ++g)
            for (int d : {action[g][c], inv[g][c]})
                if (relabel[static_cast<std::size_t>(d)] < 0) {
                    relabel[static_cast<std::size_t>(d)] = static_cast<int>(order.size());
                    order.push_back(d);
                }
    }
    if (static_cast<int>(order.size()) != index) throw InvalidArgument("coset table is not transitive");
    CosetTable out{index, std::vector<std::vector<int>>(action.size(), std::vector<int>(static_cast<std::size_t>(index)))};
    for (std::size_t g = 0; g < action.size(); ++g)
        for (int c = 0; c < index; ++c)
            out.action[g][static_cast<std::size_t>(relabel[static_cast<std::size_t>(c)])] =
                relabel[static_cast<std::size_t>(action[g][static_cast<std::size_t>(c)])];
    return out;
}

void validate_table(const Presentation& pres, const CosetTable& table) {
    if (table.action.size() != static_cast<std::size_t>(pres.rank()))
        throw InvalidArgument("coset table has " + std::to_string(table.action.size()) + " generators, presentation has " +
                              std::to_string(pres.rank()));
    check_shape(table);
    if (!table.is_transitive()) throw InvalidArgument("coset table action is not transitive");
    if (!table.relators_trivial(pres)) throw InvalidArgument("a relator acts nontrivially on the cosets");
}

// ---------------------------------------------------------------------------
// Reidemeister-Schreier

SchreierResult reidemeister_schreier(const Presentation& pres, const CosetTable& table, Transversal strategy) {
    validate_table(pres, table);
    const int n = table.index;
    const auto r = static_cast<std::size_t>(pres.rank());
    const auto inv = inverse_action(table);

    // Spanning tree of the Schreier graph; tree[c][g] marks edge c --g--> c.g.
    std::vector<std::vector<char>> tree(static_cast<std::size_t>(n), std::vector<char>(r, 0));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[0] = 1;
    std::deque<int> work{0};
    while (!work.empty()) {
        int c;
        if (strategy == Transversal::BreadthFirst) {
            c = work.front();
            work.pop_front();
        } else {
            c = work.back();
            work.pop_back();
        }
        const auto cu = static_cast<std::size_t>(c);
        for (std::size_t g = 0; g < r; ++g) {
            const int fwd = table.action[g][cu];
            if (!seen[static_cast<std::size_t>(fwd)]) {
                seen[static_cast<std::size_t>(fwd)] = 1;
                tree[cu][g] = 1;
                work.push_back(fwd);
            }
            const int back = inv[g][cu];
            if (!seen[static_cast<std::size_t>(back)]) {
                seen[static_cast<std::size_t>(back)] = 1;
                tree[static_cast<std::size_t>(back)][g] = 1;
                work.push_back(back);
            }
        }
    }

    SchreierResult res;
    std::vector<std::vector<int>> code(static_cast<std::size_t>(n), std::vector<int>(r, 0));
    for (int c = 0; c < n; ++c)
        for (std::size_t g = 0; g < r; ++g)
            if (!tree[static_cast<std::size_t>(c)][g]) {
                res.generator_origin.emplace_back(c, static_cast<int>(g));
                code[static_cast<std::size_t>(c)][g] = static_cast<int>(res.generator_origin.size());
                res.presentation.generators.push_back(pres.generators[g] + "_" + std::to_string(c));
            }
    // n|X| - n + 1 >= 1, so the subgroup always has at least one Schreier generator.
    res.schreier_rank = static_cast<int>(res.generator_origin.size());

    for (const Word& rel : pres.relators)
        for (int c = 0; c < n; ++c) {
            Word w;
            int d = c;
            for (int l : rel) {
                const auto g = static_cast<std::size_t>(std::abs(l) - 1);
                if (l > 0) {
                    if (int s = code[static_cast<std::size_t>(d)][g]) w.push_back(s);
                    d = table.action[g][static_cast<std::size_t>(d)];
                } else {
                    d = inv[g][static_cast<std::size_t>(d)];
                    if (int s = code[static_cast<std::size_t>(d)][g]) w.push_back(-s);
                }
            }
            res.presentation.relators.push_back(std::move(w));
        }
    res.presentation = res.presentation.normalized();
    return res;
}

// ---------------------------------------------------------------------------
// Low-index enumeration

namespace {

class LowIndexSearch {
public:
    LowIndexSearch(const Presentation& pres, int max_index, std::uint64_t max_nodes)
        : n_(max_index), cols_(2 * pres.rank()), max_nodes_(max_nodes) {
        for (const Word& r : pres.relators) {
            std::vector<int> w;
            for (int l : r) w.push_back(column(l));
            rels_.push_back(std::move(w));
        }
    }

    std::vector<CosetTable> run() {
        std::vector<std::vector<int>> t(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(cols_), -1));
        if (deduce(t, 1)) recurse(t, 1);
        std::sort(out_.begin(), out_.end());
        return std::move(out_);
    }

private:
    static int column(int letter) { return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0); }
    static int inv_col(int col) { return col ^ 1; }

    void recurse(std::vector<std::vector<int>>& t, int k) {
        if (++nodes_ > max_nodes_) throw BudgetExceeded("low-index search exceeded " + std::to_string(max_nodes_) + " nodes");
        int c = -1, x = -1;
        for (int i = 0; i < k && c < 0; ++i)
            for (int j = 0; j < cols_; ++j)
                if (t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] < 0) {
                    c = i;
                    x = j;
                    break;
                }
        if (c < 0) {
            emit(t, k);
            return;
        }
        const int xi = inv_col(x);
        for (int d = 0; d <= k && d < n_; ++d) {
            if (t[static_cast<std::size_t>(d)][static_cast<std::size_t>(xi)] >= 0) continue;
            auto copy = t;
            copy[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] = d;
            copy[static_cast<std::size_t>(d)][static_cast<std::size_t>(xi)] = c;
            const int k2 = d == k ? k + 1 : k;
            if (deduce(copy, k2)) recurse(copy, k2);
        }
    }

    // Scan every relator from every live coset until no new deductions; false on coincidence.
    bool deduce(std::vector<std::vector<int>>& t, int k) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& w : rels_) {
                const int len = static_cast<int>(w.size());
                for (int c = 0; c < k; ++c) {
                    int f = c, i = 0;
                    while (i < len) {
                        const int nx = t[static_cast<std::size_t>(f)][static_cast<std::size_t>(w[static_cast<std::size_t>(i)])];
                        if (nx < 0) break;
                        f = nx;
                        ++i;
                    }
                    if (i == len) {
                        if (f != c) return false;
                        continue;
                    }
                    int b = c, j = len;
                    while (j > i) {
                        const int nx = t[static_cast<std::size_t>(b)][static_cast<std::size_t>(inv_col(w[static_cast<std::size_t>(j - 1)]))];
                        if (nx < 0) break;
                        b = nx;
                        --j;
                    }
                    if (j == i) {
                        if (f != b) return false;
                    } else if (j == i + 1) {
                        const int col = w[static_cast<std::size_t>(i)];
                        auto& back = t[static_cast<std::size_t>(b)][static_cast<std::size_t>(inv_col(col))];
                        if (back >= 0 && back != f) return false;
                        t[static_cast<std::size_t>(f)][static_cast<std::size_t>(col)] = b;
                        back = f;
                        changed = true;
                    }
                }
            }
        }
        return true;
    }

    void emit(const std::vector<std::vector<int>>& t, int k) {
        CosetTable table{k, std::vector<std::vector<int>>(static_cast<std::size_t>(cols_ / 2), std::vector<int>(static_cast<std::size_t>(k)))};
        for (int g = 0; g < cols_ / 2; ++g)
            for (int c = 0; c < k; ++c)
                table.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)] = t[static_cast<std::size_t>(c)][static_cast<std::size_t>(2 * g)];
        out_.push_back(std::move(table));
    }

    int n_;
    int cols_;
    std::uint64_t max_nodes_;
    std::uint64_t nodes_ = 0;
    std::vector<std::vector<int>> rels_;
    std::vector<CosetTable> out_;
};

}  // namespace

std::vector<CosetTable> low_index_subgroups(const Presentation& pres, int max_index, const Budget& budget) {
    if (max_index < 1) throw InvalidArgument("maximum index must be positive");
    if (static_cast<std::uint64_t>(max_index) > budget.max_index)
        throw BudgetExceeded("index " + std::to_string(max_index) + " exceeds the enumeration cap " + std::to_string(budget.max_index));
    return LowIndexSearch(pres.normalized(), max_index, budget.max_nodes).run();
}

std::vector<std::uint64_t> subgroup_counts(const std::vector<CosetTable>& tables, int max_index) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_index), 0);
    for (const auto& t : tables)
        if (t.index >= 1 && t.index <= max_index) ++counts[static_cast<std::size_t>(t.index - 1)];
    return counts;
}

// ---------------------------------------------------------------------------
// Cyclic covers

void check_homomorphism_to_z(const Presentation& pres, const std::vector<Integer>& phi, bool require_surjective) {
    if (phi.size() != static_cast<std::size_t>(pres.rank()))
        throw InvalidArgument("homomorphism has " + std::to_string(phi.size()) + " images for " + std::to_string(pres.rank()) + " generators");
    for (const Word& r : pres.relators) {
        Integer s = 0;
        for (int l : r) s += l > 0 ? phi[static_cast<std::size_t>(l - 1)] : Integer(-phi[static_cast<std::size_t>(-l - 1)]);
        if (s != 0) throw RelatorNotKilled("relator " + pres.word_to_string(r) + " maps to " + s.get_str());
    }
    if (require_surjective) {
        Integer g = 0;
        for (const Integer& v : phi) g = gcd(g, v);
        if (g != 1) throw NotSurjective("generator images have gcd " + g.get_str());
    }
}

CosetTable cyclic_cover_table(const Presentation& pres, const std::vector<Integer>& phi, int i) {
    if (i < 1) throw InvalidArgument("cover degree must be positive");
    check_homomorphism_to_z(pres, phi, true);
    CosetTable t{i, std::vector<std::vector<int>>(phi.size(), std::vector<int>(static_cast<std::size_t>(i)))};
    for (std::size_t g = 0; g < phi.size(); ++g) {
        Integer step = phi[g] % i;
        if (step < 0) step += i;
        const int s = static_cast<int>(step.get_si());
        for (int k = 0; k < i; ++k) t.action[g][static_cast<std::size_t>(k)] = (k + s) % i;
    }
    return t;
}

std::vector<TowerLevel> cyclic_tower(const Presentation& pres, const std::vector<Integer>& phi, int depth,
                                     const std::vector<std::int64_t>& primes) {
    const Presentation p = pres.normalized();
    check_homomorphism_to_z(p, phi, true);
    std::vector<TowerLevel> out;
    for (int i = 1; i <= depth; ++i) {
        const auto sub = reidemeister_schreier(p, cyclic_cover_table(p, phi, i));
        TowerLevel level{i, {}};
        for (std::int64_t q : primes) level.d_p[q] = d_p(sub.presentation, q);
        out.push_back(std::move(level));
    }
    return out;
}

CosetTable intersect(const CosetTable& a, const CosetTable& b) {
    if (a.action.size() != b.action.size()) throw InvalidArgument("tables have different generator counts");
    std::map<std::pair<int, int>, int> id{{{0, 0}, 0}};
    std::vector<std::pair<int, int>> order{{0, 0}};
    const auto ia = inverse_action(a), ib = inverse_action(b);
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto [x, y] = order[k];
        for (std::size_t g = 0; g < a.action.size(); ++g)
            for (const std::pair<int, int>& nb :
                 {std::pair{a.action[g][static_cast<std::size_t>(x)], b.action[g][static_cast<std::size_t>(y)]},
                  std::pair{ia[g][static_cast<std::size_t>(x)], ib[g][static_cast<std::size_t>(y)]}})
                if (id.emplace(nb, static_cast<int>(order.size())).second) order.push_back(nb);
    }
    CosetTable t{static_cast<int>(order.size()), std::vector<std::vector<int>>(a.action.size(), std::vector<int>(order.size()))};
    for (std::size_t g = 0; g < a.action.size(); ++g)
        for (std::size_t k = 0; k < order.size(); ++k)
            t.action[g][k] = id.at({a.action[g][static_cast<std::size_t>(order[k].first)], b.action[g][static_cast<std::size_t>(order[k].second)]});
    return t;
}

// ---------------------------------------------------------------------------
// Golod-Shafarevich

GolodShafarevich golod_shafarevich_check(const Integer& d, const Integer& num_relators, const Integer& num_generators) {
    if (d < 0 || num_relators < 0 || num_generators < 0) throw InvalidArgument("Golod-Shafarevich inputs must be nonnegative");
    GolodShafarevich r;
    r.margin = ratio(d * d, 4) - num_relators + num_generators - d;
    r.holds = r.margin > 0;
    return r;
}

GolodShafarevichChain golod_shafarevich_chain(const Integer& d) {
    if (d < 2) throw InvalidArgument("chained bound needs d >= 2");
    const Interval lg = log2_enclosure(Rational(d - 1));
    const Interval inner = (Interval::point(Rational(d - 12)) - Rational(6) * lg);
    GolodShafarevichChain c;
    c.value = square(inner) / Rational(4) + Rational(2 - 3 * d);
    c.positive = c.value.positive();
    return c;
}

LargenessReport largeness_conditions(const std::vector<LargenessTriple>& data, const LargenessOptions& options) {
    LargenessReport rep;
    if (data.empty()) return rep;
    rep.condition_i = std::all_of(data.begin(), data.end(), [](const LargenessTriple& t) { return t.abelian; });

    for (const auto& t : data) {
        if (t.index_h < 1 || t.index_j < t.index_h || t.index_j % t.index_h != 0)
            throw InvalidArgument("need [G:H] dividing [G:J]");
        rep.log_ratio.push_back(log2_enclosure(ratio(t.index_j, t.index_h)) / Rational(t.index_h));
        rep.d_ratio.push_back(ratio(t.d_j_mod_k, t.index_j));
    }

    bool increasing = true;
    for (std::size_t i = 1; i < rep.log_ratio.size(); ++i)
        if (!(rep.log_ratio[i].lo > rep.log_ratio[i - 1].hi)) increasing = false;
    rep.condition_ii = increasing && rep.log_ratio.back().at_least(options.growth_threshold) == Decision::True;

    rep.d_ratio_sup = *std::max_element(rep.d_ratio.begin(), rep.d_ratio.end());
    Rational tail_min = rep.d_ratio.back();
    for (std::size_t i = rep.d_ratio.size() / 2; i < rep.d_ratio.size(); ++i) tail_min = std::min(tail_min, rep.d_ratio[i]);
    rep.condition_iii = rep.d_ratio_sup > 0 && tail_min >= options.decay_tolerance * rep.d_ratio_sup;
    return rep;
}

}  // namespace kll

namespace kll {

Presentation tietze_simplify(const Presentation& pres, std::size_t max_word_length) {
    std::vector<std::string> gens = pres.generators;
    std::vector<Word> rels = pres.relators;
    for (;;) {
        // normalize and dedupe
        std::vector<Word> clean;
        for (const Word& r : rels) {
            Word w = cyclically_reduce(free_reduce(r));
            if (w.empty()) continue;
            const Word wi = cyclically_reduce(inverse(w));
            bool dup = false;
            for (const Word& c : clean) dup = dup || c == w || c == wi;
            if (!dup) clean.push_back(std::move(w));
        }
        rels = std::move(clean);
        std::stable_sort(rels.begin(), rels.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });

        // first relator with a generator occurring once
        std::size_t ri = rels.size(), pos = 0;
        for (std::size_t i = 0; i < rels.size() && ri == rels.size(); ++i) {
            std::map<int, int> count;
            for (int l : rels[i]) ++count[std::abs(l)];
            for (std::size_t j = 0; j < rels[i].size(); ++j)
                if (count[std::abs(rels[i][j])] == 1) {
                    ri = i;
                    pos = j;
                    break;
                }
        }
        if (ri == rels.size()) break;

        // rotate so the letter is first: x^e w = 1, hence x = (w^-1)^e
        const Word& r = rels[ri];
        Word rot(r.begin() + static_cast<std::ptrdiff_t>(pos), r.end());
        rot.insert(rot.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(pos));
        const int letter = rot[0];
        const int x = std::abs(letter);
        const Word w(rot.begin() + 1, rot.end());
        const Word value = letter > 0 ? inverse(w) : w;  // word equal to x
        const Word value_inv = inverse(value);

        std::vector<Word> next;
        bool too_long = false;
        for (std::size_t i = 0; i < rels.size(); ++i) {
            if (i == ri) continue;
            Word out;
            for (int l : rels[i]) {
                if (std::abs(l) == x) {
                    const Word& sub = l > 0 ? value : value_inv;
                    out.insert(out.end(), sub.begin(), sub.end());
                } else {
                    out.push_back(l);
                }
            }
            out = free_reduce(out);
            too_long = too_long || out.size() > max_word_length;
            next.push_back(std::move(out));
        }
        if (too_long) break;
        // renumber generators above x
        for (Word& o : next)
            for (int& l : o) {
                const int a = std::abs(l);
                if (a > x) l = l > 0 ? l - 1 : l + 1;
            }
        gens.erase(gens.begin() + (x - 1));
        rels = std::move(next);
    }
    Presentation out;
    out.generators = std::move(gens);
    out.relators = std::move(rels);
    return out;
}

}  // namespace kll
