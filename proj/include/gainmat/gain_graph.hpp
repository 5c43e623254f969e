#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "gainmat/group.hpp"

namespace gainmat {

// Edge subsets as bitmasks; enumeration budgets keep |E| well under 64.
using EdgeSet = std::uint64_t;

inline bool contains(EdgeSet s, int e) { return (s >> e) & 1; }
inline EdgeSet with(EdgeSet s, int e) { return s | (EdgeSet(1) << e); }
inline int popcount(EdgeSet s) { return __builtin_popcountll(s); }
inline int lowest_edge(EdgeSet s) { return __builtin_ctzll(s); }

struct Edge {
    int tail, head;
    GroupElement gain;  // oriented tail -> head; reversing inverts the gain
};

// Oriented multigraph with group-labelled edges. Loops are allowed and keep
// their gain up to conjugation under switching.
class GainGraph {
  public:
    GainGraph() : n_(0) {}
    GainGraph(GroupDescriptor group, int vertex_count) : group_(std::move(group)), n_(vertex_count) {}

    const GroupDescriptor& group() const { return group_; }
    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int i) const { return edges_[i]; }
    bool is_loop(int i) const { return edges_[i].tail == edges_[i].head; }

    void add_edge(int tail, int head, GroupElement gain) {
        if (tail < 0 || tail >= n_ || head < 0 || head >= n_)
            throw input_error("edge endpoint out of range");
        edges_.push_back({tail, head, normalize(group_, std::move(gain))});
    }

    void add_edge(int tail, int head) { add_edge(tail, head, identity_element(group_)); }

    // Reverses the orientation of edge i; the gain inverts, the matroids and
    // subspaces downstream must not change.
    GainGraph reversed(int i) const {
        GainGraph g = *this;
        Edge& e = g.edges_[i];
        std::swap(e.tail, e.head);
        e.gain = inverse(group_, e.gain);
        return g;
    }

  private:
    GroupDescriptor group_;
    int n_;
    std::vector<Edge> edges_;
};

inline EdgeSet full_edge_set(const GainGraph& g) {
    return g.edge_count() == 64 ? ~EdgeSet(0) : (EdgeSet(1) << g.edge_count()) - 1;
}

namespace detail {
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        parent[y] = x;
        return true;
    }
};
}  // namespace detail

// Connected components of the subgraph spanned by `mask`, as edge sets,
// ordered by their smallest edge index.
inline std::vector<EdgeSet> components(const GainGraph& g, EdgeSet mask) {
    detail::UnionFind uf(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e)
        if (contains(mask, e)) uf.unite(g.edge(e).tail, g.edge(e).head);
    std::map<int, EdgeSet> by_root;
    std::vector<int> order;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!contains(mask, e)) continue;
        const int root = uf.find(g.edge(e).tail);
        if (by_root.find(root) == by_root.end()) order.push_back(root);
        by_root[root] = with(by_root[root], e);
    }
    std::vector<EdgeSet> comps;
    for (int root : order) comps.push_back(by_root[root]);
    return comps;
}

inline int vertex_count_of(const GainGraph& g, EdgeSet mask) {
    std::vector<bool> seen(g.vertex_count(), false);
    int c = 0;
    for (int e = 0; e < g.edge_count(); ++e)
        if (contains(mask, e))
            for (int v : {g.edge(e).tail, g.edge(e).head})
                if (!seen[v]) {
                    seen[v] = true;
                    ++c;
                }
    return c;
}

inline bool is_connected(const GainGraph& g, EdgeSet mask) {
    return components(g, mask).size() <= 1;
}

// Switching at v with gamma: edges leaving v get gamma * psi, edges entering v
// get psi * gamma^-1, loops at v are conjugated.
inline GainGraph switch_gain(const GainGraph& g, int v, const GroupElement& gamma) {
    GainGraph out(g.group(), g.vertex_count());
    const auto& grp = g.group();
    for (int i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.edge(i);
        GroupElement psi = e.gain;
        if (e.tail == v && e.head == v)
            psi = compose(grp, compose(grp, gamma, psi), inverse(grp, gamma));
        else if (e.tail == v)
            psi = compose(grp, gamma, psi);
        else if (e.head == v)
            psi = compose(grp, psi, inverse(grp, gamma));
        out.add_edge(e.tail, e.head, psi);
    }
    return out;
}

// Lowest-index maximal forest inside `mask`; loops never enter a forest.
inline EdgeSet spanning_forest(const GainGraph& g, EdgeSet mask) {
    detail::UnionFind uf(g.vertex_count());
    EdgeSet forest = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!contains(mask, e) || g.is_loop(e)) continue;
        if (uf.unite(g.edge(e).tail, g.edge(e).head)) forest = with(forest, e);
    }
    return forest;
}

namespace detail {
// Vertex potentials gamma_v over a forest: gamma_root = id and every forest
// edge u -> v satisfies gamma_u * psi(e) * gamma_v^-1 = id. After switching
// each v by gamma_v, edge gains become gamma_tail * psi * gamma_head^-1.
// Roots are the smallest vertex of each tree, or `root_hint` where it applies.
inline std::vector<GroupElement> forest_potentials(const GainGraph& g, EdgeSet forest,
                                                   std::optional<int> root_hint = std::nullopt) {
    const auto& grp = g.group();
    const int n = g.vertex_count();
    std::vector<std::vector<int>> adj(n);
    for (int e = 0; e < g.edge_count(); ++e)
        if (contains(forest, e)) {
            adj[g.edge(e).tail].push_back(e);
            adj[g.edge(e).head].push_back(e);
        }
    std::vector<GroupElement> pot(n, identity_element(grp));
    std::vector<bool> done(n, false);
    auto bfs = [&](int root) {
        std::vector<int> queue{root};
        done[root] = true;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const int u = queue[q];
            for (int e : adj[u]) {
                const Edge& ed = g.edge(e);
                const int w = ed.tail == u ? ed.head : ed.tail;
                if (done[w]) continue;
                done[w] = true;
                // gamma_w = gamma_u * psi if u -> w, else gamma_u * psi^-1
                pot[w] = ed.tail == u ? compose(grp, pot[u], ed.gain)
                                      : compose(grp, pot[u], inverse(grp, ed.gain));
                queue.push_back(w);
            }
        }
    };
    if (root_hint && *root_hint >= 0 && *root_hint < n) bfs(*root_hint);
    for (int v = 0; v < n; ++v)
        if (!done[v]) bfs(v);
    return pot;
}

inline GroupElement switched_gain(const GainGraph& g, const std::vector<GroupElement>& pot, int e) {
    const auto& grp = g.group();
    const Edge& ed = g.edge(e);
    return compose(grp, compose(grp, pot[ed.tail], ed.gain), inverse(grp, pot[ed.head]));
}
}  // namespace detail

struct SwitchOp {
    int vertex;
    GroupElement gamma;
};

struct NormalizedForest {
    GainGraph graph;             // all forest edges carry the identity gain
    std::vector<SwitchOp> log;   // switchings that transform the input into `graph`
};

// Makes every edge of `forest` identity by a rooted traversal of switchings.
inline NormalizedForest normalize_forest(const GainGraph& g, EdgeSet forest,
                                         std::optional<int> root_hint = std::nullopt) {
    detail::UnionFind uf(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e)
        if (contains(forest, e)) {
            if (g.is_loop(e) || !uf.unite(g.edge(e).tail, g.edge(e).head))
                throw input_error("normalize_forest: edge set contains a cycle or loop");
        }
    const auto pot = detail::forest_potentials(g, forest, root_hint);
    NormalizedForest out;
    out.graph = GainGraph(g.group(), g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        out.graph.add_edge(ed.tail, ed.head, detail::switched_gain(g, pot, e));
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!is_identity(g.group(), pot[v])) out.log.push_back({v, pot[v]});
    return out;
}

// Normalized gains of the non-forest edges, grouped per component of `mask`.
// These generate the switching class's subgroup on each component.
inline std::vector<std::vector<GroupElement>> component_gain_generators(const GainGraph& g, EdgeSet mask) {
    const EdgeSet forest = spanning_forest(g, mask);
    const auto pot = detail::forest_potentials(g, forest);
    std::vector<std::vector<GroupElement>> gens;
    for (const EdgeSet comp : components(g, mask)) {
        std::vector<GroupElement> here;
        for (int e = 0; e < g.edge_count(); ++e)
            if (contains(comp, e) && !contains(forest, e)) here.push_back(detail::switched_gain(g, pot, e));
        gens.push_back(std::move(here));
    }
    return gens;
}

// Subgroup generated by the closed walks through v inside the connected set f.
inline Subgroup subgroup_of_subset(const GainGraph& g, EdgeSet f, int base_vertex) {
    if (!is_connected(g, f)) throw input_error("subgroup_of_subset: edge set is not connected");
    const EdgeSet forest = spanning_forest(g, f);
    const auto pot = detail::forest_potentials(g, forest, base_vertex);
    std::vector<GroupElement> gens;
    for (int e = 0; e < g.edge_count(); ++e)
        if (contains(f, e) && !contains(forest, e)) gens.push_back(detail::switched_gain(g, pot, e));
    return closure(g.group(), gens);
}

// Balanced = every closed walk has identity gain = all normalized non-forest
// gains are the identity.
inline bool is_balanced(const GainGraph& g, EdgeSet mask) {
    for (const auto& gens : component_gain_generators(g, mask))
        for (const GroupElement& e : gens)
            if (!is_identity(g.group(), e)) return false;
    return true;
}

struct CompressedGraph {
    GainGraph graph;                    // one vertex per component, loops only
    std::vector<int> component_of_edge;  // original edge -> component id (-1 outside mask)
};

// Contracts each component of `mask` to a point after normalizing a maximal
// forest; surviving edges are the non-identity normalized gains, kept as loops
// at their component's vertex. Identity loops are dropped.
inline CompressedGraph compressed_graph(const GainGraph& g, EdgeSet mask) {
    const auto comps = components(g, mask);
    const EdgeSet forest = spanning_forest(g, mask);
    const auto pot = detail::forest_potentials(g, forest);
    CompressedGraph out;
    out.graph = GainGraph(g.group(), static_cast<int>(comps.size()));
    out.component_of_edge.assign(g.edge_count(), -1);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int e = 0; e < g.edge_count(); ++e)
            if (contains(comps[c], e)) {
                out.component_of_edge[e] = static_cast<int>(c);
                if (contains(forest, e)) continue;
                const GroupElement psi = detail::switched_gain(g, pot, e);
                if (!is_identity(g.group(), psi)) out.graph.add_edge(int(c), int(c), psi);
            }
    return out;
}

// Covering graph of a finite-group gain graph, with the free left action.
struct CoveringGraph {
    GainGraph graph;                        // gains all identity (a plain graph)
    std::vector<GroupElement> elements;     // fiber coordinates
    std::vector<std::vector<int>> action;   // action[a] = vertex permutation of elements[a]
    int base_vertices = 0;

    int vertex_of(std::size_t elem_index, int v) const {
        return static_cast<int>(elem_index) * base_vertices + v;
    }
};

inline CoveringGraph covering_graph(const GainGraph& g) {
    const auto& grp = g.group();
    if (!grp.finite()) throw unsupported_error("covering_graph needs a finite group");
    const Subgroup whole = closure(grp, group_generators(grp));
    CoveringGraph cover;
    cover.elements = whole.elements;
    cover.base_vertices = g.vertex_count();
    const int fiber = static_cast<int>(cover.elements.size());
    cover.graph = GainGraph(GroupDescriptor::trivial_group(grp.dimension),
                            fiber * g.vertex_count());
    std::map<GroupElement, int> index;
    for (int a = 0; a < fiber; ++a) index[cover.elements[a]] = a;
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        for (int a = 0; a < fiber; ++a) {
            const int b = index.at(normalize(grp, compose(grp, cover.elements[a], ed.gain)));
            cover.graph.add_edge(cover.vertex_of(a, ed.tail), cover.vertex_of(b, ed.head));
        }
    }
    for (int a = 0; a < fiber; ++a) {
        std::vector<int> perm(cover.graph.vertex_count());
        for (int b = 0; b < fiber; ++b) {
            const int c = index.at(normalize(grp, compose(grp, cover.elements[a], cover.elements[b])));
            for (int v = 0; v < g.vertex_count(); ++v) perm[cover.vertex_of(b, v)] = cover.vertex_of(c, v);
        }
        cover.action.push_back(std::move(perm));
    }
    return cover;
}

// Reconstructs a gain graph from a graph with a free action: lowest-index
// orbit representatives become the vertices, and each edge orbit contributes
// one edge whose gain moves the tail's fiber coordinate to the head's.
inline GainGraph quotient_graph(const CoveringGraph& cover, const GroupDescriptor& grp) {
    const int n = cover.graph.vertex_count();
    const int fiber = static_cast<int>(cover.elements.size());
    // Orbit representatives and the element carrying rep -> vertex.
    std::vector<int> rep(n, -1);
    std::vector<GroupElement> carry(n, identity_element(grp));
    for (int v = 0; v < n; ++v) {
        if (rep[v] != -1) continue;
        int lowest = v;
        for (int a = 0; a < fiber; ++a) lowest = std::min(lowest, cover.action[a][v]);
        for (int a = 0; a < fiber; ++a) {
            const int w = cover.action[a][lowest];
            if (rep[w] != -1 && rep[w] != lowest) throw input_error("quotient_graph: action is not free");
            rep[w] = lowest;
            carry[w] = cover.elements[a];
        }
    }
    std::vector<int> vertex_id(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v)
        if (rep[v] == v) vertex_id[v] = next++;
    GainGraph out(grp, next);
    // Edge orbits: sweep edges in index order, mark each orbit once.
    std::vector<bool> used(cover.graph.edge_count(), false);
    std::multimap<std::pair<int, int>, int> by_ends;
    for (int e = 0; e < cover.graph.edge_count(); ++e)
        by_ends.insert({{cover.graph.edge(e).tail, cover.graph.edge(e).head}, e});
    for (int e = 0; e < cover.graph.edge_count(); ++e) {
        if (used[e]) continue;
        const Edge& ed = cover.graph.edge(e);
        const GroupElement gain =
            normalize(grp, compose(grp, inverse(grp, carry[ed.tail]), carry[ed.head]));
        out.add_edge(vertex_id[rep[ed.tail]], vertex_id[rep[ed.head]], gain);
        for (int a = 0; a < fiber; ++a) {
            const std::pair<int, int> key{cover.action[a][ed.tail], cover.action[a][ed.head]};
            for (auto it = by_ends.lower_bound(key); it != by_ends.upper_bound(key); ++it)
                if (!used[it->second]) {
                    used[it->second] = true;
                    break;
                }
        }
    }
    return out;
}

// Each edge repeated `copies` times consecutively; copy block i starts at
// original index i * copies.
inline GainGraph duplicate_edges(const GainGraph& g, int copies) {
    GainGraph out(g.group(), g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e)
        for (int c = 0; c < copies; ++c) out.add_edge(g.edge(e).tail, g.edge(e).head, g.edge(e).gain);
    return out;
}

}  // namespace gainmat
