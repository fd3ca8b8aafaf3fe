#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "hminor/graph.hpp"

namespace hminor {
namespace {

// Splits a line into unsigned integers; a '#' starts a comment.
std::vector<std::uint64_t> tokens(const std::string& line, std::size_t lineno) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    const std::size_t end = std::min(line.find('#'), line.size());
    while (pos < end) {
        while (pos < end && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
        if (pos >= end) break;
        std::size_t stop = pos;
        while (stop < end && line[stop] != ' ' && line[stop] != '\t' && line[stop] != '\r') ++stop;
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + stop, value);
        if (ec != std::errc() || ptr != line.data() + stop)
            throw ParseError("expected a non-negative integer, got '" + line.substr(pos, stop - pos) + "'", lineno);
        out.push_back(value);
        pos = stop;
    }
    return out;
}

}  // namespace

Graph parse_graph(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::uint64_t n = 0, d = 0, m = 0;
    std::vector<Edge> edges;
    std::vector<std::size_t> degree;
    std::unordered_set<std::uint64_t> seen;
    std::size_t last_line = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = tokens(line, lineno);
        if (t.empty()) continue;
        last_line = lineno;
        if (!have_header) {
            if (t.size() != 3) throw ParseError("header must be 'n d m'", lineno);
            n = t[0];
            d = t[1];
            m = t[2];
            if (n > 0xffffffffULL) throw ParseError("too many vertices", lineno);
            have_header = true;
            degree.assign(n, 0);
            edges.reserve(m);
            continue;
        }
        if (t.size() != 2) throw ParseError("edge line must be 'u v'", lineno);
        if (edges.size() == m) throw ParseError("more than " + std::to_string(m) + " edges", lineno);
        std::uint64_t u = t[0], v = t[1];
        if (u >= n || v >= n) throw ParseError("endpoint out of range [0, " + std::to_string(n) + ")", lineno);
        if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u), lineno);
        if (!seen.insert((std::min(u, v) << 32) | std::max(u, v)).second)
            throw ParseError("duplicate edge " + std::to_string(u) + " " + std::to_string(v), lineno);
        if (++degree[u] > d || ++degree[v] > d)
            throw ParseError("degree bound " + std::to_string(d) + " exceeded", lineno);
        edges.push_back({static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))});
    }
    if (!have_header) throw ParseError("missing header 'n d m'", lineno + 1);
    if (edges.size() != m)
        throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(edges.size()),
                         last_line);
    try {
        return Graph::from_edges(n, d, edges);
    } catch (const InvalidGraph& e) {
        throw ParseError(e.what(), last_line);
    }
}

Graph read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open graph file '" + path + "'");
    return parse_graph(in);
}

void write_graph(const Graph& g, std::ostream& out) {
    out << g.num_vertices() << ' ' << g.degree_bound() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write graph file '" + path + "'");
    write_graph(g, out);
}

std::string format_graph(const Graph& g) {
    std::ostringstream out;
    write_graph(g, out);
    return out.str();
}

}  // namespace hminor
