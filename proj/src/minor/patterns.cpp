#include <algorithm>
#include <charconv>
#include <filesystem>

#include "hminor/minor.hpp"

namespace hminor {
namespace {

Graph from_edge_list(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::size_t> deg(n, 0);
    for (const Edge& e : edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    std::size_t d = n ? *std::max_element(deg.begin(), deg.end()) : 0;
    return Graph::from_edges(n, d, edges);
}

std::optional<std::size_t> number(std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

}  // namespace

Graph complete_graph(std::size_t r) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < r; ++u)
        for (Vertex v = u + 1; v < r; ++v) edges.push_back({u, v});
    return from_edge_list(r, edges);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < a; ++u)
        for (Vertex v = 0; v < b; ++v) edges.push_back({u, static_cast<Vertex>(a + v)});
    return from_edge_list(a + b, edges);
}

Graph cycle_graph(std::size_t r) {
    if (r < 3) throw UsageError("a cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (Vertex u = 0; u + 1 < r; ++u) edges.push_back({u, u + 1});
    edges.push_back({0, static_cast<Vertex>(r - 1)});
    return from_edge_list(r, edges);
}

Graph path_graph(std::size_t r) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u + 1 < r; ++u) edges.push_back({u, u + 1});
    return from_edge_list(r, edges);
}

Graph petersen_graph() {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 5; ++i) {
        edges.push_back({i, static_cast<Vertex>((i + 1) % 5)});
        edges.push_back({i, static_cast<Vertex>(i + 5)});
        edges.push_back({static_cast<Vertex>(5 + i), static_cast<Vertex>(5 + (i + 2) % 5)});
    }
    for (auto& e : edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    return from_edge_list(10, edges);
}

Graph wagner_graph() {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 8; ++i) {
        Vertex j = (i + 1) % 8, k = (i + 4) % 8;
        edges.push_back({std::min(i, j), std::max(i, j)});
        if (i < 4) edges.push_back({i, k});
    }
    return from_edge_list(8, edges);
}

Graph parse_pattern(const std::string& spec) {
    std::string s = spec;
    if (s == "petersen") return petersen_graph();
    if (s == "wagner" || s == "V8") return wagner_graph();
    if (s == "K33" || s == "K3,3" || s == "K3:3") return complete_bipartite(3, 3);
    if (s.size() >= 2 && (s[0] == 'K' || s[0] == 'C' || s[0] == 'P')) {
        std::string body = s.substr(1);
        auto sep = body.find_first_of(",:");
        if (s[0] == 'K' && sep != std::string::npos) {
            auto a = number(std::string_view(body).substr(0, sep));
            auto b = number(std::string_view(body).substr(sep + 1));
            if (a && b) return complete_bipartite(*a, *b);
        } else if (auto r = number(body)) {
            if (s[0] == 'K') return complete_graph(*r);
            if (s[0] == 'C') return cycle_graph(*r);
            return path_graph(*r);
        }
    }
    if (std::filesystem::exists(s)) return read_graph(s);
    throw UsageError("unknown pattern '" + spec + "'");
}

std::optional<std::string> pattern_name(const Graph& h) {
    const std::size_t r = h.num_vertices();
    if (r >= 1 && h == complete_graph(r)) return "K" + std::to_string(r);
    for (std::size_t a = 1; a < r; ++a)
        if (h == complete_bipartite(a, r - a)) return "K" + std::to_string(a) + ":" + std::to_string(r - a);
    if (r >= 3 && h == cycle_graph(r)) return "C" + std::to_string(r);
    if (r >= 1 && h == path_graph(r)) return "P" + std::to_string(r);
    if (h == petersen_graph()) return "petersen";
    if (h == wagner_graph()) return "wagner";
    return std::nullopt;
}

}  // namespace hminor
