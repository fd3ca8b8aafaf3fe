#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hminor/graph.hpp"

namespace hminor {

struct EdgeWitness {
    Vertex hx = 0;
    Vertex hy = 0;
    Vertex gu = 0;   ///< in branch set of hx
    Vertex gv = 0;   ///< in branch set of hy
    bool operator==(const EdgeWitness&) const = default;
};

/// An H-minor model in G: one connected branch set per H vertex and a G edge
/// for every H edge, listed in the order of h.edges().
struct MinorEmbedding {
    std::vector<std::vector<Vertex>> branch_sets;
    std::vector<EdgeWitness> witnesses;
};

struct EmbeddingViolation {
    enum class Kind { shape, empty_set, vertex_range, disjointness, connectivity, witness };
    Kind kind;
    std::string message;
};

std::string to_string(EmbeddingViolation::Kind kind);

/// Every invariant violation of emb as an H-minor model in g; empty means valid.
std::vector<EmbeddingViolation> validate_embedding(const Graph& g, const Graph& h, const MinorEmbedding& emb);

/// Rewrites vertex ids through map (branch sets re-sorted).
MinorEmbedding relabel(const MinorEmbedding& emb, const std::vector<Vertex>& map);

// ---------------------------------------------------------------- search

enum class MinorStatus { found, absent, budget_exceeded };

struct MinorSearchOptions {
    std::uint64_t node_limit = 0;   ///< branch-and-bound nodes; 0 = unlimited
    std::optional<std::chrono::steady_clock::time_point> deadline;
    bool reductions = true;
    bool planarity = true;
    bool heuristics = true;
    int heuristic_rounds = 24;
    std::uint64_t seed = 0x9b1dULL;
};

struct MinorSearchResult {
    MinorStatus status = MinorStatus::absent;
    std::optional<MinorEmbedding> embedding;
    std::uint64_t nodes = 0;
};

/// Exact decision of whether h is a minor of g, up to the optional budget.
/// A found embedding always passes validate_embedding.
MinorSearchResult search_minor(const Graph& g, const Graph& h, const MinorSearchOptions& options = {});

/// Exact, unbounded.
std::optional<MinorEmbedding> has_minor(const Graph& g, const Graph& h);

/// Exhaustive oracle for |V(g)| <= 12; throws UsageError above that.
std::optional<MinorEmbedding> has_minor_bruteforce(const Graph& g, const Graph& h);

/// A K_{3,3} or K5 model (tried in that order); absent exactly when g is planar.
std::optional<MinorEmbedding> forbidden_minor_certificate(const Graph& g);
/// The pattern a forbidden_minor_certificate result refers to.
Graph forbidden_pattern_of(const MinorEmbedding& emb);

bool is_planar(const Graph& g);

/// Kuratowski subgraph edges of a non-planar graph (empty when planar).
std::vector<Edge> kuratowski_edges(const Graph& g);

/// Bare structural search used by the branch-and-bound stage; exposed for tests.
MinorSearchResult branch_and_bound_minor(const Graph& g, const Graph& h, const MinorSearchOptions& options);

/// Contraction heuristic; may miss minors, never returns an invalid model.
std::optional<MinorEmbedding> contraction_heuristic(const Graph& g, const Graph& h, int rounds, std::uint64_t seed);

/// Injective homomorphism of h into q (subgraph isomorphism), small graphs only.
std::optional<std::vector<Vertex>> find_subgraph(const Graph& q, const Graph& h);

// ---------------------------------------------------------------- patterns

Graph complete_graph(std::size_t r);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph cycle_graph(std::size_t r);
Graph path_graph(std::size_t r);
Graph petersen_graph();
Graph wagner_graph();

/// K5, K33, K3,3, K<r>, K<a>,<b>, C<r>, P<r>, petersen, wagner; otherwise a
/// graph file path.
Graph parse_pattern(const std::string& spec);
/// Canonical name of a pattern graph if it is one of the named families.
std::optional<std::string> pattern_name(const Graph& h);

// ---------------------------------------------------------------- certificates

/// "# pattern <name> <r> <m>" header, one line "x: g g ..." per H vertex, then
/// one line "x-y: u v" per H edge.
void write_certificate(std::ostream& out, const Graph& h, const MinorEmbedding& emb,
                       const std::string& pattern = "");
std::string format_certificate(const Graph& h, const MinorEmbedding& emb, const std::string& pattern = "");

struct ParsedCertificate {
    std::optional<std::string> pattern;   ///< from the header, if any
    std::optional<std::size_t> header_vertices;
    std::optional<std::size_t> header_edges;
    MinorEmbedding embedding;
    std::vector<std::pair<Vertex, Vertex>> witness_edges;   ///< H edges as listed
};

ParsedCertificate parse_certificate(std::istream& in);

/// Validates a certificate against g and h; includes header and H-edge coverage checks.
std::vector<EmbeddingViolation> validate_certificate(const Graph& g, const Graph& h, const ParsedCertificate& cert);

}  // namespace hminor
