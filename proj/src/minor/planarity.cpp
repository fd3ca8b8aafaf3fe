#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <algorithm>
#include <map>

#include "hminor/minor.hpp"
#include "minor_internal.hpp"

namespace hminor {
namespace {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;

BoostGraph to_boost(const Graph& g) {
    BoostGraph bg(g.num_vertices());
    for (const Edge& e : g.edges()) boost::add_edge(e.u, e.v, bg);
    auto index = boost::get(boost::edge_index, bg);
    int count = 0;
    for (auto [it, end] = boost::edges(bg); it != end; ++it) boost::put(index, *it, count++);
    return bg;
}

}  // namespace

bool is_planar(const Graph& g) {
    if (g.num_vertices() < 5 || g.num_edges() < 9) return true;
    if (g.num_vertices() >= 3 && g.num_edges() > 3 * g.num_vertices() - 6) return false;
    BoostGraph bg = to_boost(g);
    return boost::boyer_myrvold_planarity_test(bg);
}

std::vector<Edge> kuratowski_edges(const Graph& g) {
    BoostGraph bg = to_boost(g);
    std::vector<boost::graph_traits<BoostGraph>::edge_descriptor> found;
    if (boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                            boost::boyer_myrvold_params::kuratowski_subgraph =
                                                std::back_inserter(found)))
        return {};
    std::vector<Edge> out;
    for (const auto& e : found) {
        auto u = static_cast<Vertex>(boost::source(e, bg));
        auto v = static_cast<Vertex>(boost::target(e, bg));
        out.push_back({std::min(u, v), std::max(u, v)});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace detail {

std::optional<MinorEmbedding> subdivision_embedding(const Graph& g, const std::vector<Edge>& edges, const Graph& h) {
    std::map<Vertex, std::vector<Vertex>> adj;
    for (const Edge& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<Vertex> branch;
    for (const auto& [v, nb] : adj)
        if (nb.size() >= 3) branch.push_back(v);
    if (branch.size() < h.num_vertices()) return std::nullopt;
    std::map<Vertex, Vertex> branch_id;
    for (std::size_t i = 0; i < branch.size(); ++i) branch_id[branch[i]] = static_cast<Vertex>(i);

    // Trace every subdivided edge between branch vertices.
    struct Path {
        Vertex a, b;
        std::vector<Vertex> interior;   // from a towards b
    };
    std::vector<Path> paths;
    std::vector<Edge> topo;
    for (Vertex start : branch) {
        for (Vertex first : adj[start]) {
            std::vector<Vertex> interior;
            Vertex prev = start, cur = first;
            while (!branch_id.count(cur)) {
                interior.push_back(cur);
                const auto& nb = adj[cur];
                if (nb.size() != 2) return std::nullopt;
                Vertex next = nb[0] == prev ? nb[1] : nb[0];
                prev = cur;
                cur = next;
            }
            Vertex a = branch_id[start], b = branch_id[cur];
            if (a < b) {
                paths.push_back({a, b, interior});
                topo.push_back({a, b});
            } else if (a == b) {
                return std::nullopt;
            }
        }
    }
    std::vector<std::vector<Vertex>> tadj(branch.size());
    std::map<std::pair<Vertex, Vertex>, std::size_t> path_of;
    for (std::size_t p = 0; p < paths.size(); ++p) {
        auto key = std::make_pair(paths[p].a, paths[p].b);
        if (path_of.count(key)) continue;
        path_of[key] = p;
        tadj[paths[p].a].push_back(paths[p].b);
        tadj[paths[p].b].push_back(paths[p].a);
    }
    for (auto& l : tadj) std::sort(l.begin(), l.end());
    Graph t = Graph::from_adjacency(branch.size(), branch.size(), tadj);
    auto phi = find_subgraph(t, h);
    if (!phi) return std::nullopt;

    MinorEmbedding emb;
    emb.branch_sets.resize(h.num_vertices());
    for (Vertex x = 0; x < h.num_vertices(); ++x) emb.branch_sets[x].push_back(branch[(*phi)[x]]);
    for (const Edge& e : h.edges()) {
        Vertex ta = (*phi)[e.u], tb = (*phi)[e.v];
        const Path& p = paths[path_of.at({std::min(ta, tb), std::max(ta, tb)})];
        std::vector<Vertex> interior = p.interior;
        if (p.a != ta) std::reverse(interior.begin(), interior.end());
        for (Vertex v : interior) emb.branch_sets[e.u].push_back(v);
        Vertex last = interior.empty() ? branch[ta] : interior.back();
        emb.witnesses.push_back({e.u, e.v, last, branch[tb]});
    }
    for (auto& s : emb.branch_sets) std::sort(s.begin(), s.end());
    if (!validate_embedding(g, h, emb).empty()) return std::nullopt;
    return emb;
}

}  // namespace detail

}  // namespace hminor
