#include <algorithm>
#include <functional>
#include <set>

#include "minor_internal.hpp"

namespace hminor::detail {
namespace {

using Key = std::pair<Vertex, Vertex>;
Key key(Vertex a, Vertex b) { return {std::min(a, b), std::max(a, b)}; }

// Interior of the expansion of (a, b), oriented from a to b.
std::vector<Vertex> oriented(const std::map<Key, std::vector<Vertex>>& exp, Vertex a, Vertex b) {
    auto it = exp.find(key(a, b));
    if (it == exp.end()) return {};
    std::vector<Vertex> path = it->second;
    if (a > b) std::reverse(path.begin(), path.end());
    return path;
}

Graph build_simple(std::size_t d, std::vector<std::vector<Vertex>> adj) {
    for (auto& l : adj) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    return Graph::from_adjacency(adj.size(), d, adj);
}

}  // namespace

MinorEmbedding lift_embedding(const Lift& lift, const MinorEmbedding& child) {
    MinorEmbedding out;
    const std::size_t r = child.branch_sets.size();
    std::map<Vertex, std::uint32_t> owner;
    out.branch_sets.resize(r);
    for (std::size_t x = 0; x < r; ++x)
        for (Vertex v : child.branch_sets[x]) {
            owner[v] = static_cast<std::uint32_t>(x);
            out.branch_sets[x].push_back(lift.to_parent[v]);
        }
    for (const auto& [k, interior] : lift.expansions) {
        auto a = owner.find(k.first), b = owner.find(k.second);
        if (a != owner.end() && b != owner.end() && a->second == b->second)
            for (Vertex v : interior) out.branch_sets[a->second].push_back(v);
    }
    for (const EdgeWitness& w : child.witnesses) {
        EdgeWitness lifted{w.hx, w.hy, lift.to_parent[w.gu], lift.to_parent[w.gv]};
        std::vector<Vertex> interior = oriented(lift.expansions, w.gu, w.gv);
        if (!interior.empty()) {
            for (Vertex v : interior) out.branch_sets[w.hx].push_back(v);
            lifted.gu = interior.back();
        }
        out.witnesses.push_back(lifted);
    }
    for (auto& s : out.branch_sets) std::sort(s.begin(), s.end());
    return out;
}

Piece induced_piece(const Graph& g, std::vector<Vertex> vertices) {
    auto sub = induced_subgraph(g, vertices);
    Piece p;
    p.graph = std::move(sub.graph);
    p.lift.to_parent = std::move(sub.to_original);
    return p;
}

Piece reduce_low_degree(const Graph& g, std::size_t min_degree_h) {
    const std::size_t n = g.num_vertices();
    std::vector<std::set<Vertex>> adj(n);
    for (Vertex v = 0; v < n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
    std::vector<char> alive(n, 1);
    std::map<Key, std::vector<Vertex>> exp;
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < n; ++v) queue.push_back(v);
    const bool peel = min_degree_h >= 2;
    const bool suppress = min_degree_h >= 3;
    while (!queue.empty()) {
        Vertex v = queue.back();
        queue.pop_back();
        if (!alive[v]) continue;
        const std::size_t deg = adj[v].size();
        if (peel && deg <= 1) {
            alive[v] = 0;
            for (Vertex w : adj[v]) {
                adj[w].erase(v);
                exp.erase(key(v, w));
                queue.push_back(w);
            }
            adj[v].clear();
        } else if (suppress && deg == 2) {
            Vertex u = *adj[v].begin(), w = *std::next(adj[v].begin());
            std::vector<Vertex> path = oriented(exp, u, v);
            path.push_back(v);
            for (Vertex x : oriented(exp, v, w)) path.push_back(x);
            exp.erase(key(u, v));
            exp.erase(key(v, w));
            adj[u].erase(v);
            adj[w].erase(v);
            adj[v].clear();
            alive[v] = 0;
            if (adj[u].count(w)) {
                queue.push_back(u);
                queue.push_back(w);
            } else {
                adj[u].insert(w);
                adj[w].insert(u);
                if (u > w) std::reverse(path.begin(), path.end());
                exp[key(u, w)] = std::move(path);
            }
        }
    }
    Piece p;
    std::vector<Vertex> index(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if (alive[v]) {
            index[v] = static_cast<Vertex>(p.lift.to_parent.size());
            p.lift.to_parent.push_back(v);
        }
    std::vector<std::vector<Vertex>> cadj(p.lift.to_parent.size());
    for (std::size_t a = 0; a < cadj.size(); ++a)
        for (Vertex w : adj[p.lift.to_parent[a]]) cadj[a].push_back(index[w]);
    for (auto& [k, path] : exp) p.lift.expansions[key(index[k.first], index[k.second])] = path;
    p.graph = build_simple(g.degree_bound(), std::move(cadj));
    return p;
}

std::vector<std::vector<Vertex>> blocks(const Graph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<std::pair<Vertex, Vertex>> stack;
    std::vector<std::vector<Vertex>> out;
    int timer = 0;
    // Iterative Tarjan: frames hold (vertex, parent, next neighbour index).
    struct Frame {
        Vertex v;
        Vertex parent;
        std::size_t next;
    };
    for (Vertex root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        std::vector<Frame> frames{{root, root, 0}};
        disc[root] = low[root] = timer++;
        while (!frames.empty()) {
            Frame& f = frames.back();
            auto nb = g.neighbors(f.v);
            if (f.next < nb.size()) {
                Vertex w = nb[f.next++];
                if (disc[w] == -1) {
                    stack.push_back({f.v, w});
                    disc[w] = low[w] = timer++;
                    frames.push_back({w, f.v, 0});
                } else if (w != f.parent && disc[w] < disc[f.v]) {
                    stack.push_back({f.v, w});
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
                continue;
            }
            const Vertex v = f.v, parent = f.parent;
            frames.pop_back();
            if (frames.empty()) break;
            low[parent] = std::min(low[parent], low[v]);
            if (low[v] >= disc[parent]) {
                std::vector<Vertex> block;
                while (!stack.empty()) {
                    auto e = stack.back();
                    stack.pop_back();
                    block.push_back(e.first);
                    block.push_back(e.second);
                    if (e.first == parent && e.second == v) break;
                }
                std::sort(block.begin(), block.end());
                block.erase(std::unique(block.begin(), block.end()), block.end());
                out.push_back(std::move(block));
            }
        }
    }
    return out;
}

std::optional<std::pair<Vertex, Vertex>> two_separator(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n < 4) return std::nullopt;
    for (Vertex u = 0; u < n; ++u) {
        std::vector<Vertex> rest;
        for (Vertex v = 0; v < n; ++v)
            if (v != u) rest.push_back(v);
        auto sub = induced_subgraph(g, rest);
        auto b = blocks(sub.graph);
        if (!is_connected(sub.graph)) return std::nullopt;   // g was not 2-connected
        if (b.size() <= 1) continue;
        // A vertex shared by two blocks is a cut vertex of g - u.
        std::vector<int> count(sub.graph.num_vertices(), 0);
        for (const auto& blk : b)
            for (Vertex v : blk) ++count[v];
        for (Vertex v = 0; v < count.size(); ++v)
            if (count[v] > 1) {
                Vertex w = sub.to_original[v];
                return std::make_pair(std::min(u, w), std::max(u, w));
            }
    }
    return std::nullopt;
}

std::vector<Piece> torsos(const Graph& g, Vertex u, Vertex v) {
    const std::size_t n = g.num_vertices();
    constexpr std::uint32_t none = ~std::uint32_t{0};
    std::vector<std::uint32_t> side(n, none);
    std::vector<std::vector<Vertex>> sides;
    for (Vertex s = 0; s < n; ++s) {
        if (s == u || s == v || side[s] != none) continue;
        const auto id = static_cast<std::uint32_t>(sides.size());
        sides.push_back({});
        std::vector<Vertex> stack{s};
        side[s] = id;
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            sides[id].push_back(x);
            for (Vertex y : g.neighbors(x))
                if (y != u && y != v && side[y] == none) {
                    side[y] = id;
                    stack.push_back(y);
                }
        }
    }
    // Route u - v through a side: BFS inside that side.
    auto route = [&](std::uint32_t through) {
        std::vector<Vertex> prev(n, none);
        std::vector<Vertex> queue{u};
        prev[u] = u;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex x = queue[head];
            for (Vertex y : g.neighbors(x)) {
                if (prev[y] != none) continue;
                if (y == v) {
                    std::vector<Vertex> interior;
                    for (Vertex z = x; z != u; z = prev[z]) interior.push_back(z);
                    std::reverse(interior.begin(), interior.end());
                    return interior;
                }
                if (side[y] != through) continue;
                prev[y] = x;
                queue.push_back(y);
            }
        }
        return std::vector<Vertex>{};
    };
    const bool real = g.has_edge(u, v);
    std::vector<Piece> out;
    for (std::uint32_t i = 0; i < sides.size(); ++i) {
        std::vector<Vertex> members = sides[i];
        members.push_back(u);
        members.push_back(v);
        Piece p = induced_piece(g, members);
        if (!real) {
            std::uint32_t other = none;
            for (std::uint32_t j = 0; j < sides.size(); ++j)
                if (j != i && (other == none || sides[j].size() < sides[other].size())) other = j;
            std::vector<Vertex> interior = route(other);
            const auto& tp = p.lift.to_parent;
            Vertex cu = static_cast<Vertex>(std::lower_bound(tp.begin(), tp.end(), u) - tp.begin());
            Vertex cv = static_cast<Vertex>(std::lower_bound(tp.begin(), tp.end(), v) - tp.begin());
            std::vector<std::vector<Vertex>> adj(p.graph.num_vertices());
            for (Vertex a = 0; a < adj.size(); ++a) adj[a].assign(p.graph.neighbors(a).begin(), p.graph.neighbors(a).end());
            adj[cu].push_back(cv);
            adj[cv].push_back(cu);
            if (cu > cv) std::reverse(interior.begin(), interior.end());
            p.lift.expansions[key(cu, cv)] = std::move(interior);
            p.graph = build_simple(g.degree_bound() + 1, std::move(adj));
        }
        out.push_back(std::move(p));
    }
    return out;
}

int connectivity_capped(const Graph& h) {
    const std::size_t r = h.num_vertices();
    if (r <= 1 || !is_connected(h)) return 0;
    auto connected_without = [&](std::vector<Vertex> removed) {
        std::vector<Vertex> keep;
        for (Vertex v = 0; v < r; ++v)
            if (std::find(removed.begin(), removed.end(), v) == removed.end()) keep.push_back(v);
        return is_connected(induced_subgraph(h, keep).graph);
    };
    // A complete graph K_r has connectivity r - 1.
    if (h.num_edges() == r * (r - 1) / 2) return static_cast<int>(std::min<std::size_t>(r - 1, 3));
    for (Vertex a = 0; a < r; ++a)
        if (!connected_without({a})) return 1;
    for (Vertex a = 0; a < r; ++a)
        for (Vertex b = a + 1; b < r; ++b)
            if (!connected_without({a, b})) return 2;
    return 3;
}

}  // namespace hminor::detail
