#include "hminor/graph.hpp"

#include <algorithm>
#include <numeric>

namespace hminor {
namespace {

std::string describe(const std::vector<GraphViolation>& violations) {
    std::string out = "invalid graph:";
    std::size_t shown = 0;
    for (const auto& v : violations) {
        if (shown++ == 8) {
            out += " ...";
            break;
        }
        out += " " + v.message + ";";
    }
    return out;
}

}  // namespace

InvalidGraph::InvalidGraph(std::vector<GraphViolation> violations)
    : UsageError(describe(violations)), violations_(std::move(violations)) {}

Graph Graph::from_edges(std::size_t n, std::size_t d, std::span<const Edge> edges) {
    std::vector<GraphViolation> bad;
    std::vector<std::vector<Vertex>> adjacency(n);
    for (const Edge& e : edges) {
        if (e.u >= n || e.v >= n) {
            bad.push_back({GraphViolation::Kind::vertex_range, e.u, e.v,
                           "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range"});
            continue;
        }
        if (e.u == e.v) {
            bad.push_back({GraphViolation::Kind::self_loop, e.u, e.v, "self-loop at " + std::to_string(e.u)});
            continue;
        }
        adjacency[e.u].push_back(e.v);
        adjacency[e.v].push_back(e.u);
    }
    if (!bad.empty()) throw InvalidGraph(std::move(bad));
    for (auto& list : adjacency) std::sort(list.begin(), list.end());
    Graph g = from_adjacency(n, d, adjacency);
    auto violations = validate(g);
    if (!violations.empty()) throw InvalidGraph(std::move(violations));
    return g;
}

Graph Graph::from_adjacency(std::size_t n, std::size_t d, const std::vector<std::vector<Vertex>>& adjacency) {
    if (adjacency.size() != n) throw UsageError("adjacency has " + std::to_string(adjacency.size()) +
                                                " lists for " + std::to_string(n) + " vertices");
    Graph g;
    g.n_ = n;
    g.d_ = d;
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + adjacency[v].size();
    g.adj_.reserve(g.offsets_[n]);
    for (const auto& list : adjacency) g.adj_.insert(g.adj_.end(), list.begin(), list.end());
    return g;
}

std::size_t Graph::max_degree() const noexcept {
    std::size_t best = 0;
    for (std::size_t v = 0; v < n_; ++v) best = std::max(best, offsets_[v + 1] - offsets_[v]);
    return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
    if (u >= n_ || v >= n_) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : neighbors(u))
            if (u < v) out.push_back({u, v});
    return out;
}

std::vector<GraphViolation> validate(const Graph& g) {
    std::vector<GraphViolation> out;
    const std::size_t n = g.num_vertices();
    using K = GraphViolation::Kind;
    for (Vertex u = 0; u < n; ++u) {
        auto nb = g.neighbors(u);
        if (nb.size() > g.degree_bound())
            out.push_back({K::degree_bound, u, u,
                           "degree bound exceeded at vertex " + std::to_string(u) + " (" +
                               std::to_string(nb.size()) + " > " + std::to_string(g.degree_bound()) + ")"});
        std::vector<Vertex> sorted(nb.begin(), nb.end());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 0; k < sorted.size(); ++k) {
            Vertex v = sorted[k];
            if (v >= n) {
                out.push_back({K::vertex_range, u, v,
                               "neighbour " + std::to_string(v) + " of " + std::to_string(u) + " out of range"});
                continue;
            }
            if (v == u) out.push_back({K::self_loop, u, u, "self-loop at " + std::to_string(u)});
            if (k > 0 && sorted[k - 1] == v && (u < v))
                out.push_back({K::parallel_edge, u, v,
                               "parallel edge (" + std::to_string(u) + "," + std::to_string(v) + ")"});
            if (v != u) {
                auto back = g.neighbors(v);
                if (std::find(back.begin(), back.end(), u) == back.end())
                    out.push_back({K::asymmetry, u, v,
                                   "asymmetry at (" + std::to_string(u) + "," + std::to_string(v) + ")"});
            }
        }
    }
    return out;
}

std::vector<std::uint32_t> connected_components(const Graph& g, std::size_t* count) {
    const std::size_t n = g.num_vertices();
    constexpr std::uint32_t unset = ~std::uint32_t{0};
    std::vector<std::uint32_t> comp(n, unset);
    std::vector<Vertex> stack;
    std::uint32_t next = 0;
    for (Vertex s = 0; s < n; ++s) {
        if (comp[s] != unset) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v))
                if (comp[w] == unset) {
                    comp[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    if (count) *count = next;
    return comp;
}

bool is_connected(const Graph& g) {
    std::size_t count = 0;
    connected_components(g, &count);
    return count <= 1;
}

}  // namespace hminor
