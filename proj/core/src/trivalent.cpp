#include "kll/trivalent.hpp"

#include "kll/error.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <utility>

namespace kll {

namespace {

std::vector<std::vector<std::pair<int, int>>> adjacency(const TrivalentGraph& g) {
    // adj[v] = (neighbour, edge); a loop appears twice
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(g.V));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto [a, b] = g.edges[e];
        adj[static_cast<std::size_t>(a)].emplace_back(b, static_cast<int>(e));
        adj[static_cast<std::size_t>(b)].emplace_back(a, static_cast<int>(e));
    }
    return adj;
}

struct Bfs {
    std::vector<int> dist, parent_edge, parent;
};

Bfs bfs(const TrivalentGraph& g, const std::vector<std::vector<std::pair<int, int>>>& adj, int root) {
    Bfs b{std::vector<int>(static_cast<std::size_t>(g.V), -1), std::vector<int>(static_cast<std::size_t>(g.V), -1),
          std::vector<int>(static_cast<std::size_t>(g.V), -1)};
    std::deque<int> q{root};
    b.dist[static_cast<std::size_t>(root)] = 0;
    while (!q.empty()) {
        const int v = q.front();
        q.pop_front();
        for (const auto& [w, e] : adj[static_cast<std::size_t>(v)])
            if (b.dist[static_cast<std::size_t>(w)] < 0) {
                b.dist[static_cast<std::size_t>(w)] = b.dist[static_cast<std::size_t>(v)] + 1;
                b.parent_edge[static_cast<std::size_t>(w)] = e;
                b.parent[static_cast<std::size_t>(w)] = v;
                q.push_back(w);
            }
    }
    return b;
}

// Non-tree edges reachable from the root, keyed by the doubled radius at which they enter the ball.
std::vector<std::pair<int, int>> non_tree_keys(const TrivalentGraph& g, const Bfs& b) {
    std::vector<char> tree(g.edges.size(), 0);
    for (int e : b.parent_edge)
        if (e >= 0) tree[static_cast<std::size_t>(e)] = 1;
    std::vector<std::pair<int, int>> keys;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto [u, w] = g.edges[e];
        if (tree[e] || b.dist[static_cast<std::size_t>(u)] < 0) continue;
        keys.emplace_back(b.dist[static_cast<std::size_t>(u)] + b.dist[static_cast<std::size_t>(w)] + 1, static_cast<int>(e));
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

// Tree path from v up to the root, as edges.
void path_to_root(const Bfs& b, int v, std::vector<int>& out) {
    while (b.parent_edge[static_cast<std::size_t>(v)] >= 0) {
        out.push_back(b.parent_edge[static_cast<std::size_t>(v)]);
        v = b.parent[static_cast<std::size_t>(v)];
    }
}

// Repeatedly delete edges at degree-1 vertices.
std::vector<int> prune_leaves(const TrivalentGraph& g, std::vector<int> edges) {
    while (true) {
        std::map<int, int> deg;
        for (int e : edges)
            for (int v : g.edges[static_cast<std::size_t>(e)]) ++deg[v];
        std::vector<int> kept;
        for (int e : edges) {
            const auto [a, b] = g.edges[static_cast<std::size_t>(e)];
            if (deg[a] != 1 && deg[b] != 1) kept.push_back(e);
        }
        if (kept.size() == edges.size()) return kept;
        edges = std::move(kept);
    }
}

std::vector<int> mask_to_edges(std::uint64_t m) {
    std::vector<int> out;
    for (int i = 0; m != 0; ++i, m >>= 1)
        if (m & 1) out.push_back(i);
    return out;
}

std::uint64_t vertex_mask(const TrivalentGraph& g, std::uint64_t edge_mask) {
    std::uint64_t vm = 0;
    for (int e : mask_to_edges(edge_mask))
        for (int v : g.edges[static_cast<std::size_t>(e)]) vm |= std::uint64_t{1} << v;
    return vm;
}

// Exact minimum b1 = 2 subgraph as an edge mask.
std::uint64_t min_b1_two_mask(const TrivalentGraph& g) {
    const auto cycles = simple_cycles(g);
    const auto adj = adjacency(g);
    std::vector<std::uint64_t> vmask;
    for (auto c : cycles) vmask.push_back(vertex_mask(g, c));
    // multi-source BFS from each cycle: distance and parent edge per vertex
    std::vector<std::vector<int>> dist(cycles.size()), pedge(cycles.size());
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        dist[i].assign(static_cast<std::size_t>(g.V), -1);
        pedge[i].assign(static_cast<std::size_t>(g.V), -1);
        std::deque<int> q;
        for (int v = 0; v < g.V; ++v)
            if (vmask[i] >> v & 1) {
                dist[i][static_cast<std::size_t>(v)] = 0;
                q.push_back(v);
            }
        while (!q.empty()) {
            const int v = q.front();
            q.pop_front();
            for (const auto& [w, e] : adj[static_cast<std::size_t>(v)])
                if (dist[i][static_cast<std::size_t>(w)] < 0) {
                    dist[i][static_cast<std::size_t>(w)] = dist[i][static_cast<std::size_t>(v)] + 1;
                    pedge[i][static_cast<std::size_t>(w)] = e;
                    q.push_back(w);
                }
        }
    }
    std::uint64_t best = 0;
    int best_size = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (std::size_t j = i + 1; j < cycles.size(); ++j) {
            std::uint64_t m;
            if (vmask[i] & vmask[j]) {
                m = cycles[i] | cycles[j];
            } else {
                int target = -1;
                for (int v = 0; v < g.V; ++v)
                    if ((vmask[j] >> v & 1) && dist[i][static_cast<std::size_t>(v)] >= 0 &&
                        (target < 0 || dist[i][static_cast<std::size_t>(v)] < dist[i][static_cast<std::size_t>(target)]))
                        target = v;
                if (target < 0) continue;  // different components
                m = cycles[i] | cycles[j];
                for (int v = target; dist[i][static_cast<std::size_t>(v)] > 0;) {
                    const int e = pedge[i][static_cast<std::size_t>(v)];
                    m |= std::uint64_t{1} << e;
                    const auto [a, b] = g.edges[static_cast<std::size_t>(e)];
                    v = a == v ? b : a;
                }
            }
            const int size = std::popcount(m);
            if (size < best_size) {
                best_size = size;
                best = m;
            }
        }
    return best;
}

}  // namespace

// ---------------------------------------------------------------------------

void TrivalentGraph::validate() const {
    if (V < 1) throw InvalidArgument("graph has no vertices");
    std::vector<int> deg(static_cast<std::size_t>(V), 0);
    for (const auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= V || b >= V) throw InvalidArgument("edge end outside the vertex range");
        ++deg[static_cast<std::size_t>(a)];
        ++deg[static_cast<std::size_t>(b)];
    }
    for (int v = 0; v < V; ++v)
        if (deg[static_cast<std::size_t>(v)] != 3)
            throw InvalidArgument("vertex " + std::to_string(v) + " has degree " + std::to_string(deg[static_cast<std::size_t>(v)]));
}

int TrivalentGraph::component_count() const {
    const auto adj = adjacency(*this);
    std::vector<char> seen(static_cast<std::size_t>(V), 0);
    int count = 0;
    for (int s = 0; s < V; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        ++count;
        std::vector<int> stack{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (const auto& [w, e] : adj[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
        }
    }
    return count;
}

bool TrivalentGraph::is_connected() const { return component_count() == 1; }

int TrivalentGraph::first_betti() const { return static_cast<int>(edges.size()) - V + component_count(); }

TrivalentGraph TrivalentGraph::theta() { return {2, {{0, 1}, {0, 1}, {0, 1}}}; }
TrivalentGraph TrivalentGraph::dumbbell() { return {2, {{0, 0}, {0, 1}, {1, 1}}}; }
TrivalentGraph TrivalentGraph::complete4() { return {4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}}; }

TrivalentGraph TrivalentGraph::cube() {
    TrivalentGraph g{8, {}};
    for (int v = 0; v < 8; ++v)
        for (int bit : {1, 2, 4})
            if (!(v & bit)) g.edges.push_back({v, v | bit});
    return g;
}

TrivalentGraph TrivalentGraph::petersen() {
    TrivalentGraph g{10, {}};
    for (int i = 0; i < 5; ++i) {
        g.edges.push_back({i, (i + 1) % 5});
        g.edges.push_back({i, i + 5});
        g.edges.push_back({i + 5, (i + 2) % 5 + 5});
    }
    return g;
}

Interval girth_bound(int vertices) {
    return Rational(2) * log2_enclosure(ratio(vertices + 2, 3)) + Rational(2);
}

Interval b1_two_bound(int first_betti) {
    if (first_betti < 2) throw FirstBettiTooSmall("b1 = " + std::to_string(first_betti));
    return Rational(6) * log2_enclosure(Rational(first_betti - 1)) + Rational(12);
}

CycleResult short_cycle(const TrivalentGraph& g) {
    g.validate();
    const auto adj = adjacency(g);
    int best_key = std::numeric_limits<int>::max(), best_root = -1, best_edge = -1;
    Bfs best_bfs;
    for (int v = 0; v < g.V; ++v) {
        Bfs b = bfs(g, adj, v);
        const auto keys = non_tree_keys(g, b);
        if (!keys.empty() && keys.front().first < best_key) {
            best_key = keys.front().first;
            best_root = v;
            best_edge = keys.front().second;
            best_bfs = std::move(b);
        }
    }
    CycleResult r;
    r.root = best_root;
    r.bound = girth_bound(g.V);
    // cycle = closing edge plus the two tree paths down to their lowest common ancestor
    const auto [u, w] = g.edges[static_cast<std::size_t>(best_edge)];
    std::vector<int> up_u, up_w;
    int a = u, b = w;
    auto depth = [&](int x) { return best_bfs.dist[static_cast<std::size_t>(x)]; };
    while (depth(a) > depth(b)) up_u.push_back(std::exchange(a, best_bfs.parent[static_cast<std::size_t>(a)]));
    while (depth(b) > depth(a)) up_w.push_back(std::exchange(b, best_bfs.parent[static_cast<std::size_t>(b)]));
    while (a != b) {
        up_u.push_back(std::exchange(a, best_bfs.parent[static_cast<std::size_t>(a)]));
        up_w.push_back(std::exchange(b, best_bfs.parent[static_cast<std::size_t>(b)]));
    }
    // walk: lca -> ... -> u, edge to w, w -> ... -> lca
    r.vertices.push_back(a);
    for (auto it = up_u.rbegin(); it != up_u.rend(); ++it) {
        r.edges.push_back(best_bfs.parent_edge[static_cast<std::size_t>(*it)]);
        r.vertices.push_back(*it);
    }
    r.edges.push_back(best_edge);
    for (int x : up_w) {
        r.vertices.push_back(x);
        r.edges.push_back(best_bfs.parent_edge[static_cast<std::size_t>(x)]);
    }
    // vertices now lists each vertex once, edges in matching cyclic order
    r.holds = Rational(static_cast<long>(r.edges.size())) <= r.bound.lo;
    return r;
}

SubgraphResult b1_two_subgraph(const TrivalentGraph& g) {
    g.validate();
    const int b1 = g.first_betti();
    if (b1 < 2) throw FirstBettiTooSmall("b1 = " + std::to_string(b1) + " < 2");
    const auto adj = adjacency(g);
    int best_key = std::numeric_limits<int>::max(), best_root = -1;
    std::vector<int> best_edges;
    for (int v = 0; v < g.V; ++v) {
        const Bfs b = bfs(g, adj, v);
        const auto keys = non_tree_keys(g, b);
        if (keys.size() < 2 || keys[1].first >= best_key) continue;
        best_key = keys[1].first;
        best_root = v;
        std::vector<int> edges{keys[0].second, keys[1].second};
        for (int k = 0; k < 2; ++k)
            for (int x : g.edges[static_cast<std::size_t>(keys[static_cast<std::size_t>(k)].second)]) path_to_root(b, x, edges);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        best_edges = prune_leaves(g, edges);
    }
    SubgraphResult r;
    r.bound = b1_two_bound(b1);
    r.root = best_root;
    r.edges = best_edges;
    r.method = "ball";
    r.holds = Rational(static_cast<long>(r.edges.size())) <= r.bound.lo;
    if (!r.holds && g.edges.size() <= 64) {
        r.edges = mask_to_edges(min_b1_two_mask(g));
        r.method = "exhaustive";
        r.holds = Rational(static_cast<long>(r.edges.size())) <= r.bound.lo;
    }
    return r;
}

std::pair<int, bool> subgraph_betti(const TrivalentGraph& g, const std::vector<int>& edges) {
    std::map<int, int> id;
    for (int e : edges)
        for (int v : g.edges.at(static_cast<std::size_t>(e))) id.emplace(v, static_cast<int>(id.size()));
    std::vector<int> parent(id.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    int comps = static_cast<int>(id.size());
    for (int e : edges) {
        const int a = find(id[g.edges[static_cast<std::size_t>(e)][0]]), b = find(id[g.edges[static_cast<std::size_t>(e)][1]]);
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --comps;
        }
    }
    return {static_cast<int>(edges.size()) - static_cast<int>(id.size()) + comps, comps <= 1};
}

std::vector<std::uint64_t> simple_cycles(const TrivalentGraph& g) {
    if (g.edges.size() > 64) throw TooLargeForExact("cycle enumeration needs at most 64 edges");
    const auto adj = adjacency(g);
    std::set<std::uint64_t> found;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.edges[e][0] == g.edges[e][1]) found.insert(std::uint64_t{1} << e);
    for (int s = 0; s < g.V; ++s) {
        // DFS over simple paths from s through vertices > s
        struct Frame { int v; std::uint64_t edges; std::uint64_t verts; int first_edge; };
        std::vector<Frame> stack{{s, 0, std::uint64_t{1} << s, -1}};
        while (!stack.empty()) {
            const Frame f = stack.back();
            stack.pop_back();
            for (const auto& [w, e] : adj[static_cast<std::size_t>(f.v)]) {
                if (w == f.v) continue;  // loop
                if (f.edges >> e & 1) continue;
                if (w == s) {
                    if (f.edges != 0) found.insert(f.edges | std::uint64_t{1} << e);
                } else if (w > s && !(f.verts >> w & 1)) {
                    stack.push_back({w, f.edges | std::uint64_t{1} << e, f.verts | std::uint64_t{1} << w, f.first_edge < 0 ? e : f.first_edge});
                }
            }
        }
    }
    return {found.begin(), found.end()};
}

int girth_exhaustive(const TrivalentGraph& g) {
    int best = std::numeric_limits<int>::max();
    for (auto c : simple_cycles(g)) best = std::min(best, std::popcount(c));
    return best;
}

int min_b1_two_edges(const TrivalentGraph& g) {
    const auto m = min_b1_two_mask(g);
    if (m == 0) throw FirstBettiTooSmall("no connected subgraph with b1 = 2");
    return std::popcount(m);
}

// ---------------------------------------------------------------------------
// Canonical form: colour refinement plus individualisation, keeping the
// lexicographically least adjacency encoding among the leaves.

namespace {

class Canonizer {
public:
    explicit Canonizer(const TrivalentGraph& g) : n_(g.V), a_(static_cast<std::size_t>(g.V * g.V), 0) {
        for (const auto& [x, y] : g.edges) {
            ++a_[static_cast<std::size_t>(x * n_ + y)];
            if (x != y) ++a_[static_cast<std::size_t>(y * n_ + x)];
        }
    }

    std::string run() {
        search(std::vector<int>(static_cast<std::size_t>(n_), 0));
        return best_;
    }

private:
    int at(int x, int y) const { return a_[static_cast<std::size_t>(x * n_ + y)]; }

    std::vector<int> refine(std::vector<int> colour) const {
        int classes = -1;
        while (true) {
            std::vector<std::vector<int>> sig(static_cast<std::size_t>(n_));
            for (int v = 0; v < n_; ++v) {
                auto& s = sig[static_cast<std::size_t>(v)];
                s.push_back(colour[static_cast<std::size_t>(v)]);
                s.push_back(at(v, v));
                std::vector<int> nb;
                for (int u = 0; u < n_; ++u)
                    if (u != v && at(v, u) > 0) nb.push_back(colour[static_cast<std::size_t>(u)] * 8 + at(v, u));
                std::sort(nb.begin(), nb.end());
                s.insert(s.end(), nb.begin(), nb.end());
            }
            std::vector<std::vector<int>> distinct = sig;
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            for (int v = 0; v < n_; ++v)
                colour[static_cast<std::size_t>(v)] = static_cast<int>(
                    std::lower_bound(distinct.begin(), distinct.end(), sig[static_cast<std::size_t>(v)]) - distinct.begin());
            if (static_cast<int>(distinct.size()) == classes) return colour;
            classes = static_cast<int>(distinct.size());
        }
    }

    void search(std::vector<int> colour) {
        colour = refine(std::move(colour));
        std::vector<int> size(static_cast<std::size_t>(n_), 0);
        for (int c : colour) ++size[static_cast<std::size_t>(c)];
        int target = -1;
        for (int c = 0; c < n_; ++c)
            if (size[static_cast<std::size_t>(c)] > 1) {
                target = c;
                break;
            }
        if (target < 0) {
            std::string enc(static_cast<std::size_t>(n_ * n_), '0');
            for (int x = 0; x < n_; ++x)
                for (int y = 0; y < n_; ++y)
                    enc[static_cast<std::size_t>(colour[static_cast<std::size_t>(x)] * n_ + colour[static_cast<std::size_t>(y)])] =
                        static_cast<char>('0' + at(x, y));
            if (best_.empty() || enc < best_) best_ = enc;
            return;
        }
        for (int v = 0; v < n_; ++v) {
            if (colour[static_cast<std::size_t>(v)] != target) continue;
            std::vector<int> next(colour.size());
            for (int x = 0; x < n_; ++x)
                next[static_cast<std::size_t>(x)] = 2 * colour[static_cast<std::size_t>(x)] + (colour[static_cast<std::size_t>(x)] == target && x != v ? 1 : 0);
            search(next);
        }
    }

    int n_;
    std::vector<int> a_;
    std::string best_;
};

TrivalentGraph subdivide(TrivalentGraph g, int e, int& new_vertex) {
    const int w = g.V++;
    const auto [a, b] = g.edges[static_cast<std::size_t>(e)];
    g.edges[static_cast<std::size_t>(e)] = {a, w};
    g.edges.push_back({w, b});
    new_vertex = w;
    return g;
}

}  // namespace

std::string canonical_form(const TrivalentGraph& g) {
    return std::to_string(g.V) + ":" + Canonizer(g).run();
}

std::vector<TrivalentGraph> connected_trivalent_graphs(int vertices) {
    if (vertices < 2 || vertices % 2 != 0) throw InvalidArgument("trivalent graphs need an even number >= 2 of vertices");
    if (vertices > 20) throw TooLargeForExact("exhaustive generation is limited to 20 vertices");
    std::map<std::string, TrivalentGraph> level;
    for (const auto& g : {TrivalentGraph::theta(), TrivalentGraph::dumbbell()}) level.emplace(canonical_form(g), g);
    for (int v = 4; v <= vertices; v += 2) {
        std::map<std::string, TrivalentGraph> next;
        auto add = [&next](TrivalentGraph g) {
            auto key = canonical_form(g);
            next.emplace(std::move(key), std::move(g));
        };
        for (const auto& [key, g] : level) {
            const int m = static_cast<int>(g.edges.size());
            for (int e = 0; e < m; ++e) {
                // join two new points on the same edge
                int w1, w2;
                TrivalentGraph h = subdivide(g, e, w1);
                h = subdivide(h, e, w2);
                h.edges.push_back({w1, w2});
                add(std::move(h));
                // pendant vertex carrying a loop
                h = subdivide(g, e, w1);
                w2 = h.V++;
                h.edges.push_back({w1, w2});
                h.edges.push_back({w2, w2});
                add(std::move(h));
                for (int f = e + 1; f < m; ++f) {
                    h = subdivide(g, e, w1);
                    h = subdivide(h, f, w2);
                    h.edges.push_back({w1, w2});
                    add(std::move(h));
                }
            }
        }
        level = std::move(next);
    }
    std::vector<TrivalentGraph> out;
    for (auto& [key, g] : level) out.push_back(std::move(g));
    return out;
}

}  // namespace kll
