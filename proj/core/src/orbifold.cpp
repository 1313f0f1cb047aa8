#include "kll/orbifold.hpp"

#include "kll/error.hpp"
#include "kll/linalg.hpp"
#include "kll/poly.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

namespace kll {

namespace {

struct UnionFind {
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
    std::vector<int> parent;
};

std::vector<int> all_edges(const SingularLocus& locus) {
    std::vector<int> e(locus.edges.size());
    std::iota(e.begin(), e.end(), 0);
    return e;
}

std::vector<int> degrees(const SingularLocus& locus, const std::vector<int>& subset) {
    std::vector<int> deg(static_cast<std::size_t>(locus.vertices), 0);
    for (int e : subset)
        for (int v : locus.edges[static_cast<std::size_t>(e)].ends) ++deg[static_cast<std::size_t>(v)];
    return deg;
}

void check_word(const Presentation& pres, const Word& w, const std::string& what) {
    for (int l : w)
        if (l == 0 || std::abs(l) > pres.rank()) throw InvalidArgument(what + " uses a letter outside the manifold generators");
}

Integer evaluate(const std::vector<Integer>& phi, const Word& w) {
    Integer s = 0;
    for (int l : w) s += l > 0 ? phi[static_cast<std::size_t>(l - 1)] : Integer(-phi[static_cast<std::size_t>(-l - 1)]);
    return s;
}

// Edges of a circle component in cyclic order with the sign of each traversal, or nullopt if some core is missing.
std::optional<std::vector<std::pair<int, int>>> oriented_cycle(const SingularLocus& locus, const LocusComponent& c) {
    for (int e : c.edges)
        if (!locus.edges[static_cast<std::size_t>(e)].core) return std::nullopt;
    std::vector<std::pair<int, int>> out;
    const int first = c.edges.front();
    out.emplace_back(first, 1);
    const auto& fe = locus.edges[static_cast<std::size_t>(first)];
    if (fe.is_circle() || fe.ends[0] == fe.ends[1]) return out;
    std::set<int> used{first};
    int at = fe.ends[1];
    while (used.size() < c.edges.size()) {
        bool moved = false;
        for (int e : c.edges) {
            if (used.count(e)) continue;
            const auto& ed = locus.edges[static_cast<std::size_t>(e)];
            if (ed.ends[0] == at) {
                out.emplace_back(e, 1);
                at = ed.ends[1];
            } else if (ed.ends[1] == at) {
                out.emplace_back(e, -1);
                at = ed.ends[0];
            } else {
                continue;
            }
            used.insert(e);
            moved = true;
            break;
        }
        if (!moved) throw InvalidArgument("circle component is not a cycle");
    }
    return out;
}

std::vector<Integer> core_exponents(const SingularLocus& locus, const std::vector<std::pair<int, int>>& cycle, int rank) {
    std::vector<Integer> v(static_cast<std::size_t>(rank), 0);
    for (const auto& [e, sign] : cycle)
        for (int l : *locus.edges[static_cast<std::size_t>(e)].core) v[static_cast<std::size_t>(std::abs(l) - 1)] += sign * (l > 0 ? 1 : -1);
    return v;
}

std::vector<std::string> ids(const SingularLocus& locus, const std::vector<int>& edges) {
    std::vector<std::string> out;
    for (int e : edges) out.push_back(locus.edges[static_cast<std::size_t>(e)].id);
    return out;
}

}  // namespace

int SingularLocus::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].id == id) return static_cast<int>(i);
    return -1;
}

void SingularLocus::validate() const {
    if (vertices < 0) throw InvalidArgument("negative vertex count");
    std::set<std::string> seen;
    for (const auto& e : edges) {
        if (!seen.insert(e.id).second) throw InvalidArgument("repeated edge id '" + e.id + "'");
        if (e.order < 2) throw InvalidArgument("edge '" + e.id + "' has order " + std::to_string(e.order) + " < 2");
        if (!e.ends.empty() && e.ends.size() != 2) throw InvalidArgument("edge '" + e.id + "' must have zero or two ends");
        for (int v : e.ends)
            if (v < 0 || v >= vertices) throw InvalidArgument("edge '" + e.id + "' has an end outside the vertex range");
    }
    const auto deg = degrees(*this, all_edges(*this));
    for (const auto& c : components(*this, all_edges(*this)))
        for (int v : c.vertices) {
            const int d = deg[static_cast<std::size_t>(v)];
            if (d != 3 && !(d == 2 && c.circle)) throw InvalidArgument("vertex " + std::to_string(v) + " has valence " + std::to_string(d));
        }
    for (int v = 0; v < vertices; ++v)
        if (deg[static_cast<std::size_t>(v)] == 0) throw InvalidArgument("isolated vertex " + std::to_string(v));
}

void OrbifoldData::validate() const {
    if (manifold.rank() < 1) throw InvalidArgument("manifold presentation needs a generator");
    for (const Word& r : manifold.relators) check_word(manifold, r, "a relator");
    locus.validate();
    for (const auto& e : locus.edges) {
        check_word(manifold, e.meridian, "meridian of '" + e.id + "'");
        if (e.core) check_word(manifold, *e.core, "core of '" + e.id + "'");
    }
}

std::vector<LocusComponent> components(const SingularLocus& locus, const std::vector<int>& edge_subset) {
    UnionFind uf(locus.vertices);
    std::vector<LocusComponent> out;
    for (int e : edge_subset) {
        const auto& ed = locus.edges[static_cast<std::size_t>(e)];
        if (ed.is_circle()) {
            out.push_back({{e}, {}, 0, 1, true});
        } else {
            uf.unite(ed.ends[0], ed.ends[1]);
        }
    }
    std::map<int, LocusComponent> by_root;
    std::set<int> touched;
    for (int e : edge_subset) {
        const auto& ed = locus.edges[static_cast<std::size_t>(e)];
        if (ed.is_circle()) continue;
        by_root[uf.find(ed.ends[0])].edges.push_back(e);
        touched.insert(ed.ends.begin(), ed.ends.end());
    }
    for (int v : touched) by_root[uf.find(v)].vertices.push_back(v);
    const auto deg = degrees(locus, edge_subset);
    for (auto& [root, c] : by_root) {
        const int v = static_cast<int>(c.vertices.size()), e = static_cast<int>(c.edges.size());
        c.euler = v - e;
        c.b1 = e - v + 1;
        c.circle = std::all_of(c.vertices.begin(), c.vertices.end(), [&](int x) { return deg[static_cast<std::size_t>(x)] == 2; });
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const LocusComponent& a, const LocusComponent& b) { return a.edges < b.edges; });
    return out;
}

int Stratification::b1() const {
    int s = 0;
    for (const auto* part : {&zero, &negative, &positive})
        for (const auto& c : *part) s += c.b1;
    return s;
}

int Stratification::edge_count() const {
    int s = 0;
    for (const auto* part : {&zero, &negative, &positive})
        for (const auto& c : *part) s += static_cast<int>(c.edges.size());
    return s;
}

Stratification stratify(const SingularLocus& locus, std::int64_t p) {
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    std::vector<int> subset;
    for (std::size_t i = 0; i < locus.edges.size(); ++i)
        if (locus.edges[i].order % p == 0) subset.push_back(static_cast<int>(i));
    Stratification s;
    s.p = p;
    for (auto& c : components(locus, subset)) {
        if (c.euler == 0)
            s.zero.push_back(std::move(c));
        else if (c.euler < 0)
            s.negative.push_back(std::move(c));
        else
            s.positive.push_back(std::move(c));
    }
    return s;
}

int first_betti(const SingularLocus& locus) {
    int s = 0;
    for (const auto& c : components(locus, all_edges(locus))) s += c.b1;
    return s;
}

Presentation orbifold_presentation(const OrbifoldData& data) {
    data.validate();
    Presentation p = data.manifold;
    for (const auto& e : data.locus.edges) p.relators.push_back(power(e.meridian, e.order));
    return p.normalized();
}

HomologyBound homology_lower_bound(const OrbifoldData& data, std::int64_t p) {
    HomologyBound h;
    const Presentation pres = orbifold_presentation(data);
    h.bound = stratify(data.locus, p).b1();
    h.actual = d_p(pres, p);
    h.actual_smith = d_p_smith(pres, p);
    h.holds = h.actual >= h.bound;
    return h;
}

DeficitReport presentation_deficit(const OrbifoldData& data) {
    data.validate();
    if (data.locus.empty()) throw EmptyLocus("the singular locus has no edges");
    DeficitReport r;
    r.manifold_deficit = static_cast<int>(data.manifold.relators.size()) - data.manifold.rank();
    for (const auto& c : components(data.locus, all_edges(data.locus)))
        r.meridian_relators += c.circle ? 1 : -3 * c.euler;
    r.deficit = r.manifold_deficit + r.meridian_relators;
    r.bound = 2 * first_betti(data.locus) - 2;
    r.holds = r.deficit <= r.bound;
    return r;
}

FibrationCheck fibration_hypothesis(const OrbifoldData& data, const std::vector<Integer>& phi, std::int64_t p) {
    check_homomorphism_to_z(orbifold_presentation(data), phi, true);
    FibrationCheck out;
    for (const auto& c : stratify(data.locus, p).zero) {
        const auto cycle = oriented_cycle(data.locus, c);
        if (!cycle) {
            out.unknown_core.push_back(ids(data.locus, c.edges));
            continue;
        }
        Integer image = 0;
        for (const auto& [e, sign] : *cycle) image += sign * evaluate(phi, *data.locus.edges[static_cast<std::size_t>(e)].core);
        if (image == 0 && !out.satisfied) {
            out.satisfied = true;
            out.witness = ids(data.locus, c.edges);
        }
    }
    return out;
}

std::optional<std::pair<std::vector<Integer>, std::vector<std::string>>> find_fibration(const OrbifoldData& data, std::int64_t p) {
    const Presentation pres = orbifold_presentation(data);
    const ZMatrix ex = exponent_matrix(pres);
    const auto n = static_cast<std::size_t>(pres.rank());
    for (const auto& c : stratify(data.locus, p).zero) {
        const auto cycle = oriented_cycle(data.locus, c);
        if (!cycle) continue;
        QMatrix a;
        for (const auto& row : ex) a.emplace_back(row.begin(), row.end());
        const auto core = core_exponents(data.locus, *cycle, pres.rank());
        a.emplace_back(core.begin(), core.end());
        const auto basis = nullspace(a, n);
        if (basis.empty()) continue;
        return std::make_pair(primitive_integer_vector(basis.front()), ids(data.locus, c.edges));
    }
    return std::nullopt;
}

Presentation quotient_by_meridians(const OrbifoldData& data, const std::vector<std::string>& edge_ids) {
    Presentation p = orbifold_presentation(data);
    for (const auto& id : edge_ids) {
        const int i = data.locus.index_of(id);
        if (i < 0) throw InvalidArgument("no edge with id '" + id + "'");
        p.relators.push_back(data.locus.edges[static_cast<std::size_t>(i)].meridian);
    }
    return p.normalized();
}

EigenspaceReport involution_eigenspace_analysis(const ZMatrix& h1, const ZMatrix& h2) {
    const std::size_t n = h1.size();
    auto to_q = [n](const ZMatrix& m) {
        if (m.size() != n) throw InvalidArgument("matrices must be square of equal size");
        QMatrix q;
        for (const auto& row : m) {
            if (row.size() != n) throw InvalidArgument("matrices must be square of equal size");
            q.emplace_back(row.begin(), row.end());
        }
        return q;
    };
    const QMatrix a = to_q(h1), b = to_q(h2), id = identity_matrix(n);
    if (multiply(a, a) != id || multiply(b, b) != id) throw NotInvolution("a matrix does not square to the identity");
    const QMatrix ab = multiply(a, b);
    if (ab != multiply(b, a)) throw NotCommuting("the involutions do not commute");
    EigenspaceReport r;
    r.dimension = static_cast<int>(n);
    int k = 0;
    for (const QMatrix* m : {&a, &b, &ab}) {
        QMatrix shifted = *m;
        for (std::size_t i = 0; i < n; ++i) shifted[i][i] -= 1;
        r.dims[k++] = static_cast<int>(n - rank(shifted));
    }
    r.claim_holds = n < 4 || *std::max_element(r.dims, r.dims + 3) >= 2;
    return r;
}

// ---------------------------------------------------------------------------

OrbifoldData random_realizable_orbifold(std::mt19937_64& rng, const RealizableOptions& options) {
    auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto order = [&]() { return options.orders[static_cast<std::size_t>(pick(0, static_cast<int>(options.orders.size()) - 1))]; };

    // Planar trivalent graph grown from the theta graph by splitting faces.
    // A dart (v, e) traverses e starting at v; faces are cyclic dart lists.
    using Dart = std::pair<int, int>;
    std::vector<std::array<int, 2>> ends = {{0, 1}, {0, 1}, {0, 1}};
    std::vector<std::vector<Dart>> faces = {{{0, 0}, {1, 1}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 0}}};
    int nv = 2;
    auto subdivide = [&](int e) {
        const int w = nv++, e2 = static_cast<int>(ends.size());
        const auto [u, v] = ends[static_cast<std::size_t>(e)];
        ends[static_cast<std::size_t>(e)] = {u, w};
        ends.push_back({w, v});
        for (auto& f : faces) {
            std::vector<Dart> g;
            for (const Dart& d : f) {
                if (d.second != e) {
                    g.push_back(d);
                } else if (d.first == u) {
                    g.push_back({u, e});
                    g.push_back({w, e2});
                } else {
                    g.push_back({v, e2});
                    g.push_back({w, e});
                }
            }
            f = std::move(g);
        }
        return w;
    };
    const int splits = pick(0, std::max(0, options.max_faces - 3));
    for (int s = 0; s < splits; ++s) {
        const auto fi = static_cast<std::size_t>(pick(0, static_cast<int>(faces.size()) - 1));
        const int len = static_cast<int>(faces[fi].size());
        int i = pick(0, len - 1), j = pick(0, len - 2);
        if (j >= i) ++j;
        const int ea = faces[fi][static_cast<std::size_t>(i)].second, eb = faces[fi][static_cast<std::size_t>(j)].second;
        const int w1 = subdivide(ea), w2 = subdivide(eb);
        auto& f = faces[fi];
        auto at = [&f](int v) {
            return static_cast<std::size_t>(std::find_if(f.begin(), f.end(), [v](const Dart& d) { return d.first == v; }) - f.begin());
        };
        std::rotate(f.begin(), f.begin() + static_cast<long>(at(w1)), f.end());
        const std::size_t k = at(w2);
        const int fe = static_cast<int>(ends.size());
        ends.push_back({w1, w2});
        std::vector<Dart> a(f.begin(), f.begin() + static_cast<long>(k)), b(f.begin() + static_cast<long>(k), f.end());
        a.push_back({w2, fe});
        b.push_back({w1, fe});
        f = std::move(a);
        faces.push_back(std::move(b));
    }

    OrbifoldData data;
    for (std::size_t f = 1; f < faces.size(); ++f) data.manifold.generators.push_back("f" + std::to_string(f));
    std::vector<int> left(ends.size(), 0), right(ends.size(), 0);
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (const Dart& d : faces[f]) (d.first == ends[static_cast<std::size_t>(d.second)][0] ? left : right)[static_cast<std::size_t>(d.second)] = static_cast<int>(f);
    data.locus.vertices = nv;
    for (std::size_t e = 0; e < ends.size(); ++e) {
        LocusEdge edge;
        edge.id = "e" + std::to_string(e);
        edge.ends = {ends[e][0], ends[e][1]};
        edge.order = order();
        if (left[e] != 0) edge.meridian.push_back(left[e]);
        if (right[e] != 0) edge.meridian.push_back(-right[e]);
        data.locus.edges.push_back(std::move(edge));
    }

    auto add_generator = [&data](const std::string& name) {
        data.manifold.generators.push_back(name);
        return data.manifold.rank();
    };
    for (int c = pick(0, options.max_split_circles); c > 0; --c) {
        const int g = add_generator("m" + std::to_string(c));
        data.locus.edges.push_back({"split" + std::to_string(c), {}, order(), {g}, Word{}});
    }
    for (int c = pick(0, options.max_handle_circles); c > 0; --c) {
        const int g = add_generator("t" + std::to_string(c));
        data.locus.edges.push_back({"handle" + std::to_string(c), {}, order(), {}, Word{g}});
    }
    for (int c = pick(0, options.max_lens); c > 0; --c) {
        const int g = add_generator("l" + std::to_string(c));
        data.manifold.relators.push_back(power({g}, pick(2, 6)));
    }
    return data;
}

}  // namespace kll
