#include "kll/taugraphs.hpp"

#include "kll/error.hpp"
#include "kll/linalg.hpp"
#include "kll/poly.hpp"

#include <algorithm>
#include <sstream>

namespace kll {

CosetGraph CosetGraph::from_action(const std::vector<std::vector<int>>& action, int n) {
    CosetGraph g;
    g.vertices = n;
    g.generator_set_size = static_cast<int>(action.size());
    for (const auto& row : action) {
        if (static_cast<int>(row.size()) != n) throw InvalidArgument("action row has the wrong length");
        for (int c = 0; c < n; ++c) g.edges.push_back({c, row[static_cast<std::size_t>(c)]});
    }
    g.validate();
    return g;
}

CosetGraph CosetGraph::cycle(int n) {
    if (n < 1) throw InvalidArgument("cycle needs n >= 1");
    std::vector<int> step(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) step[static_cast<std::size_t>(i)] = (i + 1) % n;
    return from_action({step}, n);
}

CosetGraph CosetGraph::complete(int n) {
    if (n < 1) throw InvalidArgument("complete graph needs n >= 1");
    CosetGraph g;
    g.vertices = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j});
    return g;
}

CosetGraph CosetGraph::projective_line(const MatrixSpace& space, const std::vector<Mat2F>& generators) {
    const FiniteRing& r = space.ring();
    if (!r.is_field() || r.degree() != 1) throw InvalidArgument("projective line needs a prime field");
    const auto p = static_cast<int>(r.size());
    // point x < p is [x : 1], point p is [1 : 0]
    auto act = [&](const Mat2F& m, int v) {
        std::int64_t x = v == p ? 1 : v, y = v == p ? 0 : 1;
        const std::int64_t nx = r.add(r.mul(m.e[0], x), r.mul(m.e[1], y));
        const std::int64_t ny = r.add(r.mul(m.e[2], x), r.mul(m.e[3], y));
        if (ny == 0) return p;
        return static_cast<int>(r.mul(nx, mod_inverse(ny, r.size())));
    };
    std::vector<std::vector<int>> action;
    for (const Mat2F& m : generators) {
        if (space.det(m) != 1) throw InvalidArgument("generator has determinant != 1");
        std::vector<int> row;
        for (int v = 0; v <= p; ++v) row.push_back(act(m, v));
        action.push_back(std::move(row));
    }
    return from_action(action, p + 1);
}

void CosetGraph::validate() const {
    if (vertices < 1) throw InvalidArgument("graph needs at least one vertex");
    for (const auto& e : edges)
        for (int v : e)
            if (v < 0 || v >= vertices) throw InvalidArgument("edge endpoint out of range");
}

std::vector<int> CosetGraph::degrees() const {
    std::vector<int> d(static_cast<std::size_t>(vertices), 0);
    for (const auto& e : edges) {
        ++d[static_cast<std::size_t>(e[0])];
        ++d[static_cast<std::size_t>(e[1])];
    }
    return d;
}

int CosetGraph::max_degree() const {
    const auto d = degrees();
    return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

bool CosetGraph::is_regular(int d) const {
    for (int x : degrees())
        if (x != d) return false;
    return true;
}

bool CosetGraph::is_connected() const {
    std::vector<int> parent(static_cast<std::size_t>(vertices));
    for (int i = 0; i < vertices; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    int comps = vertices;
    for (const auto& e : edges) {
        const int a = find(e[0]), b = find(e[1]);
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --comps;
        }
    }
    return comps == 1;
}

CheegerResult cheeger_exact(const CosetGraph& g, const Budget& budget) {
    g.validate();
    const int n = g.vertices;
    if (n > static_cast<int>(budget.max_cheeger_vertices) || n > 30)
        throw TooLargeForExact(std::to_string(n) + " vertices exceeds the exhaustive limit of " +
                               std::to_string(std::min(budget.max_cheeger_vertices, 30U)));
    if (n < 2) throw InvalidArgument("Cheeger constant needs at least two vertices");
    std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n));
    for (const auto& e : g.edges)
        if (e[0] != e[1]) {
            nbr[static_cast<std::size_t>(e[0])].push_back(e[1]);
            nbr[static_cast<std::size_t>(e[1])].push_back(e[0]);
        }

    std::uint32_t mask = 0, best_mask = 0;
    long boundary = 0, best_b = -1;
    int size = 0, best_s = 1;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < total; ++i) {
        const int v = __builtin_ctzll(i);
        const std::uint32_t bit = 1U << v;
        const bool inside = (mask & bit) != 0;
        for (int w : nbr[static_cast<std::size_t>(v)]) boundary += (((mask >> w) & 1U) != 0) == inside ? 1 : -1;
        mask ^= bit;
        size += inside ? -1 : 1;
        if (2 * size > n) continue;
        if (best_b < 0 || boundary * best_s < best_b * size) {
            best_b = boundary;
            best_s = size;
            best_mask = mask;
        }
    }
    CheegerResult r;
    r.h = ratio(best_b, best_s);
    for (int v = 0; v < n; ++v)
        if ((best_mask >> v) & 1U) r.witness.push_back(v);
    return r;
}

QVector laplacian_charpoly(const CosetGraph& g) {
    g.validate();
    const auto n = static_cast<std::size_t>(g.vertices);
    QMatrix l(n, QVector(n, Rational(0)));
    for (const auto& e : g.edges) {
        if (e[0] == e[1]) continue;
        const auto a = static_cast<std::size_t>(e[0]), b = static_cast<std::size_t>(e[1]);
        l[a][a] += 1;
        l[b][b] += 1;
        l[a][b] -= 1;
        l[b][a] -= 1;
    }
    return characteristic_polynomial(l);
}

SpectralBounds cheeger_spectral_bounds(const CosetGraph& g) {
    g.validate();
    if (g.vertices > kMaxSpectralVertices)
        throw TooLargeForExact(std::to_string(g.vertices) + " vertices exceeds the spectral limit of " +
                               std::to_string(kMaxSpectralVertices));
    if (g.vertices < 2) throw InvalidArgument("spectral bounds need at least two vertices");
    if (!g.is_connected()) throw Disconnected("graph has more than one component");
    const auto decomposition = squarefree_decomposition(QPoly(laplacian_charpoly(g)));
    const int dmax = g.max_degree();
    // count(lo) < 2 <= count(hi); eigenvalues lie in [0, 2 dmax]
    Rational lo(0), hi(2 * dmax + 1);
    for (int it = 0; it < 64; ++it) {
        Rational mid = (lo + hi) / 2;
        if (count_roots_at_most(decomposition, mid) >= 2)
            hi = mid;
        else
            lo = mid;
    }
    SpectralBounds out;
    out.lambda2 = {lo, hi};
    out.max_degree = dmax;
    out.lower = lo / 2;
    out.upper = sqrt_enclosure(Rational(2 * dmax) * hi).hi;
    return out;
}

std::string to_string(TauVerdict v) {
    return v == TauVerdict::Consistent ? "consistent with (tau)" : "h -> 0 trend";
}

TauReport tau_family_report(const std::vector<CosetGraph>& graphs, const TauOptions& opts, const Budget& budget) {
    TauReport rep;
    if (graphs.empty()) return rep;
    for (const auto& g : graphs)
        if (g.generator_set_size != graphs.front().generator_set_size)
            throw InvalidArgument("all graphs must come from generating sets of the same size");
    for (const auto& g : graphs) {
        TauEntry e;
        e.vertices = g.vertices;
        if (!g.is_connected()) {
            e.exact = Rational(0);
        } else if (g.vertices <= static_cast<int>(budget.max_cheeger_vertices)) {
            e.exact = cheeger_exact(g, budget).h;
        }
        if (e.exact) {
            e.lower = e.upper = *e.exact;
        } else {
            const auto s = cheeger_spectral_bounds(g);
            e.lower = s.lower;
            e.upper = s.upper;
        }
        rep.entries.push_back(std::move(e));
    }
    rep.inf_lower = rep.entries[0].lower;
    rep.inf_upper = rep.entries[0].upper;
    Rational max_lower = rep.entries[0].lower;
    for (const auto& e : rep.entries) {
        rep.inf_lower = std::min(rep.inf_lower, e.lower);
        rep.inf_upper = std::min(rep.inf_upper, e.upper);
        max_lower = std::max(max_lower, e.lower);
    }
    const std::size_t m = rep.entries.size();
    bool falling = m >= 2;
    for (std::size_t i = m / 2; i + 1 < m; ++i) falling = falling && rep.entries[i + 1].upper <= rep.entries[i].upper;
    if (falling && rep.entries.back().upper <= opts.drop * max_lower) rep.verdict = TauVerdict::TrendToZero;
    return rep;
}

std::string tau_csv(const TauReport& report) {
    std::ostringstream os;
    os << "index,h_lower,h_exact,h_upper\n";
    for (const auto& e : report.entries)
        os << e.vertices << ',' << to_string(e.lower) << ',' << (e.exact ? to_string(*e.exact) : "") << ','
           << to_string(e.upper) << '\n';
    return os.str();
}

}  // namespace kll
