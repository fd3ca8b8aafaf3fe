#include <algorithm>

#include "hminor/minor.hpp"

namespace hminor {

std::string to_string(EmbeddingViolation::Kind kind) {
    switch (kind) {
        case EmbeddingViolation::Kind::shape: return "shape";
        case EmbeddingViolation::Kind::empty_set: return "empty";
        case EmbeddingViolation::Kind::vertex_range: return "range";
        case EmbeddingViolation::Kind::disjointness: return "disjointness";
        case EmbeddingViolation::Kind::connectivity: return "connectivity";
        case EmbeddingViolation::Kind::witness: return "witness";
    }
    return "unknown";
}

std::vector<EmbeddingViolation> validate_embedding(const Graph& g, const Graph& h, const MinorEmbedding& emb) {
    using K = EmbeddingViolation::Kind;
    std::vector<EmbeddingViolation> out;
    const std::size_t r = h.num_vertices();
    const std::size_t n = g.num_vertices();
    if (emb.branch_sets.size() != r) {
        out.push_back({K::shape, std::to_string(emb.branch_sets.size()) + " branch sets for " + std::to_string(r) +
                                     " pattern vertices"});
        return out;
    }
    constexpr std::uint32_t none = ~std::uint32_t{0};
    std::vector<std::uint32_t> owner(n, none);
    for (std::size_t x = 0; x < r; ++x) {
        const auto& set = emb.branch_sets[x];
        if (set.empty()) out.push_back({K::empty_set, "branch set " + std::to_string(x) + " is empty"});
        for (Vertex v : set) {
            if (v >= n) {
                out.push_back({K::vertex_range, "branch set " + std::to_string(x) + " has vertex " +
                                                    std::to_string(v) + " outside G"});
                continue;
            }
            if (owner[v] != none)
                out.push_back({K::disjointness, "vertex " + std::to_string(v) + " in branch sets " +
                                                    std::to_string(owner[v]) + " and " + std::to_string(x)});
            else
                owner[v] = static_cast<std::uint32_t>(x);
        }
    }
    // Connectivity of each branch set inside G.
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack;
    for (std::size_t x = 0; x < r; ++x) {
        const auto& set = emb.branch_sets[x];
        if (set.empty() || set.front() >= n) continue;
        std::size_t reached = 0, members = 0;
        for (Vertex v : set)
            if (v < n && owner[v] == x) ++members;
        stack.assign(1, set.front());
        seen[set.front()] = 1;
        std::vector<Vertex> touched{set.front()};
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            ++reached;
            for (Vertex w : g.neighbors(v))
                if (!seen[w] && owner[w] == x) {
                    seen[w] = 1;
                    touched.push_back(w);
                    stack.push_back(w);
                }
        }
        for (Vertex v : touched) seen[v] = 0;
        if (reached < members)
            out.push_back({K::connectivity, "branch set " + std::to_string(x) + " is not connected"});
    }
    // One witness per H edge, in h.edges() order.
    const auto hedges = h.edges();
    if (emb.witnesses.size() != hedges.size()) {
        out.push_back({K::witness, std::to_string(emb.witnesses.size()) + " witnesses for " +
                                       std::to_string(hedges.size()) + " pattern edges"});
        return out;
    }
    for (std::size_t e = 0; e < hedges.size(); ++e) {
        const EdgeWitness& w = emb.witnesses[e];
        const bool same = (w.hx == hedges[e].u && w.hy == hedges[e].v) || (w.hx == hedges[e].v && w.hy == hedges[e].u);
        if (!same) {
            out.push_back({K::witness, "witness " + std::to_string(e) + " names pattern edge " + std::to_string(w.hx) +
                                           "-" + std::to_string(w.hy) + ", expected " + std::to_string(hedges[e].u) +
                                           "-" + std::to_string(hedges[e].v)});
            continue;
        }
        if (w.gu >= n || w.gv >= n || owner[w.gu] != w.hx || owner[w.gv] != w.hy) {
            out.push_back({K::witness, "witness for " + std::to_string(w.hx) + "-" + std::to_string(w.hy) +
                                           " has endpoints outside the branch sets"});
            continue;
        }
        if (!g.has_edge(w.gu, w.gv))
            out.push_back({K::witness, "witness edge " + std::to_string(w.gu) + "-" + std::to_string(w.gv) +
                                           " is not in G"});
    }
    return out;
}

MinorEmbedding relabel(const MinorEmbedding& emb, const std::vector<Vertex>& map) {
    MinorEmbedding out;
    out.branch_sets.reserve(emb.branch_sets.size());
    for (const auto& set : emb.branch_sets) {
        std::vector<Vertex> mapped;
        mapped.reserve(set.size());
        for (Vertex v : set) mapped.push_back(map[v]);
        std::sort(mapped.begin(), mapped.end());
        out.branch_sets.push_back(std::move(mapped));
    }
    out.witnesses = emb.witnesses;
    for (auto& w : out.witnesses) {
        w.gu = map[w.gu];
        w.gv = map[w.gv];
    }
    return out;
}

}  // namespace hminor
