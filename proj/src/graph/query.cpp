#include <algorithm>

#include "hminor/graph.hpp"

namespace hminor {

std::optional<Vertex> neighbor_query(const Graph& g, Vertex v, std::size_t i, QueryLedger& ledger) {
    if (v >= g.num_vertices())
        throw UsageError("neighbour query on vertex " + std::to_string(v) + " of a graph with " +
                         std::to_string(g.num_vertices()) + " vertices");
    if (i < 1 || i > g.degree_bound())
        throw UsageError("neighbour index " + std::to_string(i) + " outside [1, " +
                         std::to_string(g.degree_bound()) + "]");
    ledger.add_neighbor_queries();
    auto nb = g.neighbors(v);
    if (nb.size() < i) return std::nullopt;
    return nb[i - 1];
}

Vertex sample_vertex(const Graph& g, RandomStream& rng, QueryLedger& ledger) {
    if (g.num_vertices() == 0) throw UsageError("cannot sample a vertex of the empty graph");
    ledger.add_vertex_sample();
    return static_cast<Vertex>(rng.below(g.num_vertices()));
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
    InducedSubgraph out;
    out.to_original.assign(vertices.begin(), vertices.end());
    std::sort(out.to_original.begin(), out.to_original.end());
    out.to_original.erase(std::unique(out.to_original.begin(), out.to_original.end()), out.to_original.end());
    for (Vertex v : out.to_original)
        if (v >= g.num_vertices()) throw UsageError("induced subgraph vertex " + std::to_string(v) + " out of range");
    const auto& ids = out.to_original;
    std::vector<std::vector<Vertex>> adjacency(ids.size());
    for (std::size_t a = 0; a < ids.size(); ++a)
        for (Vertex w : g.neighbors(ids[a])) {
            auto it = std::lower_bound(ids.begin(), ids.end(), w);
            if (it != ids.end() && *it == w) adjacency[a].push_back(static_cast<Vertex>(it - ids.begin()));
        }
    out.graph = Graph::from_adjacency(ids.size(), g.degree_bound(), adjacency);
    return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices, QueryLedger& ledger) {
    InducedSubgraph out = induced_subgraph(g, vertices);
    ledger.add_neighbor_queries(static_cast<std::uint64_t>(out.to_original.size()) * g.degree_bound());
    ledger.add_induced_subgraph();
    return out;
}

}  // namespace hminor
