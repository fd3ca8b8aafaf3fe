#pragma once

#include <atomic>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hminor/rng.hpp"

namespace hminor {

using Vertex = std::uint32_t;

struct Edge {
    Vertex u;
    Vertex v;
    auto operator<=>(const Edge&) const = default;
};

/// Bad arguments from a caller: out-of-range vertex, impossible parameters.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Graph or pattern input that cannot be parsed.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct GraphViolation {
    enum class Kind { asymmetry, degree_bound, self_loop, parallel_edge, vertex_range };
    Kind kind;
    Vertex u;
    Vertex v;
    std::string message;
};

/// Raised by Graph::from_edges when the input does not describe a valid graph.
class InvalidGraph : public UsageError {
public:
    explicit InvalidGraph(std::vector<GraphViolation> violations);
    const std::vector<GraphViolation>& violations() const noexcept { return violations_; }

private:
    std::vector<GraphViolation> violations_;
};

/// Simple undirected graph with degree bound d, stored as sorted adjacency (CSR).
class Graph {
public:
    Graph() = default;

    /// Builds a graph from an edge list. Throws InvalidGraph on loops,
    /// duplicates, out-of-range endpoints or degree-bound violations.
    static Graph from_edges(std::size_t n, std::size_t d, std::span<const Edge> edges);

    /// Wraps adjacency lists verbatim, without any checking. Intended for
    /// validation tests and for callers that construct adjacency directly.
    static Graph from_adjacency(std::size_t n, std::size_t d, const std::vector<std::vector<Vertex>>& adjacency);

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t degree_bound() const noexcept { return d_; }
    std::size_t num_edges() const noexcept { return adj_.size() / 2; }

    std::span<const Vertex> neighbors(Vertex v) const noexcept {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    std::size_t max_degree() const noexcept;
    bool has_edge(Vertex u, Vertex v) const noexcept;

    /// Edges with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    bool operator==(const Graph& other) const = default;

private:
    std::size_t n_ = 0;
    std::size_t d_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adj_;
};

/// Every invariant violation of a graph; empty means valid.
std::vector<GraphViolation> validate(const Graph& g);

/// Connected components, labelled 0.. in order of smallest vertex.
std::vector<std::uint32_t> connected_components(const Graph& g, std::size_t* count = nullptr);
bool is_connected(const Graph& g);

// ---------------------------------------------------------------- queries

struct QueryCounts {
    std::uint64_t neighbor_queries = 0;
    std::uint64_t vertex_samples = 0;
    std::uint64_t induced_subgraph_queries = 0;

    bool operator==(const QueryCounts&) const = default;
    std::uint64_t total() const noexcept { return neighbor_queries + vertex_samples; }
};

/// Thread-safe query counters.
class QueryLedger {
public:
    QueryLedger() = default;
    QueryLedger(const QueryLedger&) = delete;
    QueryLedger& operator=(const QueryLedger&) = delete;

    void add_neighbor_queries(std::uint64_t k = 1) noexcept { neighbor_.fetch_add(k, std::memory_order_relaxed); }
    void add_vertex_sample() noexcept { samples_.fetch_add(1, std::memory_order_relaxed); }
    void add_induced_subgraph() noexcept { induced_.fetch_add(1, std::memory_order_relaxed); }

    QueryCounts snapshot() const noexcept {
        return {neighbor_.load(std::memory_order_relaxed), samples_.load(std::memory_order_relaxed),
                induced_.load(std::memory_order_relaxed)};
    }

private:
    std::atomic<std::uint64_t> neighbor_{0};
    std::atomic<std::uint64_t> samples_{0};
    std::atomic<std::uint64_t> induced_{0};
};

/// The i-th neighbour of v (1-based), or nothing when deg(v) < i.
/// Throws UsageError for v >= n or i outside [1, d].
std::optional<Vertex> neighbor_query(const Graph& g, Vertex v, std::size_t i, QueryLedger& ledger);

/// Uniform vertex of g.
Vertex sample_vertex(const Graph& g, RandomStream& rng, QueryLedger& ledger);

struct InducedSubgraph {
    Graph graph;                       ///< vertices relabelled 0..|B|-1 in ascending original order
    std::vector<Vertex> to_original;
};

/// G[B]. Charges |B| * d neighbour queries and one induced-subgraph query.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices, QueryLedger& ledger);

/// G[B] without charging queries (analysis code).
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

// ---------------------------------------------------------------- io

/// Text format: header "n d m", then m lines "u v". Blank lines and '#'
/// comments are ignored. Errors carry the offending line number.
Graph parse_graph(std::istream& in);
Graph read_graph(const std::string& path);
void write_graph(const Graph& g, std::ostream& out);
void write_graph(const Graph& g, const std::string& path);
std::string format_graph(const Graph& g);

}  // namespace hminor
