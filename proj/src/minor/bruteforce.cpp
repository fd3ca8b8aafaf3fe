#include <bit>

#include "hminor/minor.hpp"

namespace hminor {
namespace {

struct Brute {
    std::size_t n = 0;
    std::size_t r = 0;
    std::vector<std::uint32_t> adj;        // per G vertex
    std::vector<char> connected;           // per mask
    std::vector<std::uint32_t> reach;      // per mask: union of neighbourhoods
    std::vector<std::vector<Vertex>> earlier;   // per H vertex: neighbours with smaller id
    std::vector<std::uint32_t> chosen;

    bool place(std::size_t x, std::uint32_t used) {
        if (x == r) return true;
        const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
        const std::uint32_t free = full & ~used;
        // Leave at least one vertex for every later pattern vertex.
        if (static_cast<std::size_t>(std::popcount(free)) < r - x) return false;
        for (std::uint32_t sub = free; sub; sub = (sub - 1) & free) {
            if (!connected[sub]) continue;
            bool ok = true;
            for (Vertex y : earlier[x])
                if ((reach[sub] & chosen[y]) == 0) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen[x] = sub;
            if (place(x + 1, used | sub)) return true;
        }
        return false;
    }
};

}  // namespace

std::optional<MinorEmbedding> has_minor_bruteforce(const Graph& g, const Graph& h) {
    const std::size_t n = g.num_vertices();
    if (n > 12) throw UsageError("brute-force oracle is limited to 12 vertices, got " + std::to_string(n));
    Brute b;
    b.n = n;
    b.r = h.num_vertices();
    if (b.r > n) return std::nullopt;
    b.adj.assign(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : g.neighbors(v)) b.adj[v] |= 1u << w;
    const std::uint32_t masks = 1u << n;
    b.connected.assign(masks, 0);
    b.reach.assign(masks, 0);
    for (std::uint32_t m = 1; m < masks; ++m) {
        const int low = std::countr_zero(m);
        b.reach[m] = b.reach[m & (m - 1)] | b.adj[static_cast<std::size_t>(low)];
        std::uint32_t seen = 1u << low, frontier = seen;
        while (frontier) {
            std::uint32_t next = 0;
            for (std::uint32_t f = frontier; f; f &= f - 1) next |= b.adj[static_cast<std::size_t>(std::countr_zero(f))];
            next &= m & ~seen;
            seen |= next;
            frontier = next;
        }
        b.connected[m] = (seen == m);
    }
    b.earlier.assign(b.r, {});
    for (Vertex x = 0; x < b.r; ++x)
        for (Vertex y : h.neighbors(x))
            if (y < x) b.earlier[x].push_back(y);
    b.chosen.assign(b.r, 0);
    if (!b.place(0, 0)) return std::nullopt;

    MinorEmbedding emb;
    for (std::size_t x = 0; x < b.r; ++x) {
        std::vector<Vertex> set;
        for (std::uint32_t m = b.chosen[x]; m; m &= m - 1) set.push_back(static_cast<Vertex>(std::countr_zero(m)));
        emb.branch_sets.push_back(std::move(set));
    }
    for (const Edge& e : h.edges()) {
        EdgeWitness w{e.u, e.v, 0, 0};
        for (Vertex a : emb.branch_sets[e.u]) {
            std::uint32_t hit = b.adj[a] & b.chosen[e.v];
            if (hit) {
                w.gu = a;
                w.gv = static_cast<Vertex>(std::countr_zero(hit));
                break;
            }
        }
        emb.witnesses.push_back(w);
    }
    return emb;
}

}  // namespace hminor
