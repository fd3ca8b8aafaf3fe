#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hminor/graph.hpp"
#include "hminor/minor.hpp"
#include "hminor/rng.hpp"
#include "hminor/walks.hpp"

namespace hminor {

// ---------------------------------------------------------------- configuration

/// ceil(coef * n^n_exp * eps^-eps_exp * i_base^i), clamped to [1, 2^62].
struct CountFormula {
    double coef = 1;
    double n_exp = 0;
    double eps_exp = 0;
    double i_base = 1;

    double raw(std::size_t n, double epsilon, int i = 0) const;
    std::uint64_t evaluate(std::size_t n, double epsilon, int i = 0) const;
};

/// Practical profile as stored in a profile file. Every field is required.
struct PracticalProfile {
    std::string name = "practical";
    CountFormula ell;
    CountFormula outer_repeats;
    CountFormula local_search_max_len;
    CountFormula walks_per_len;
    CountFormula findpath_k;
    int i_min = 0;
    int i_max = 0;
    std::size_t biclique_side = 0;
    double epsilon_cutoff = 0;
    std::uint64_t minor_node_limit = 0;
};

/// JSON text; throws UsageError naming the first missing or malformed field.
PracticalProfile parse_practical_profile(const std::string& json_text);
PracticalProfile load_practical_profile(const std::string& path);
std::string format_practical_profile(const PracticalProfile& profile);

/// Parameters resolved for one graph size.
struct TesterConfig {
    std::string profile = "practical";
    std::size_t n = 0;
    double delta = 0.1;
    double epsilon = 0.1;
    Graph pattern;
    std::uint64_t ell = 1;
    double epsilon_cutoff = 0;
    std::uint64_t outer_repeats = 1;
    std::uint64_t local_search_max_len = 1;
    std::uint64_t walks_per_len = 1;
    int i_min = 0;
    int i_max = 0;
    std::size_t biclique_side = 1;   ///< |A| = |B|
    CountFormula findpath_k;
    std::uint64_t minor_node_limit = 0;
    std::optional<double> minor_time_budget;   ///< seconds per exact minor call
    bool diagnostics = true;                   ///< assemble the biclique model and count bad events
    std::uint64_t seed = 1;

    std::size_t r() const noexcept { return pattern.num_vertices(); }
    std::uint64_t k(int i) const { return findpath_k.evaluate(n, epsilon, i); }
    std::uint64_t walk_length(int i) const { return ell << i; }
    /// Broken invariants (counts >= 1, nonempty i-range, ...); empty when usable.
    std::vector<std::string> problems() const;
    /// Largest single loop bound; theory profiles are astronomically large.
    double largest_count() const;
};

TesterConfig theory_config(std::size_t n, double epsilon, double delta, const Graph& pattern, std::uint64_t seed);
TesterConfig practical_config(const PracticalProfile& profile, std::size_t n, double epsilon, double delta,
                              const Graph& pattern, std::uint64_t seed);

// ---------------------------------------------------------------- procedures

/// All walks of one FindPath call; `hit` is the lexicographically least
/// colliding pair (index into from_u, index into from_v).
struct FindPathResult {
    std::vector<WalkPath> from_u;
    std::vector<WalkPath> from_v;
    std::optional<std::pair<std::size_t, std::size_t>> hit;

    bool found() const noexcept { return hit.has_value(); }
    const WalkPath& walk_u() const { return from_u[hit->first]; }
    const WalkPath& walk_v() const { return from_v[hit->second]; }
};

/// k lazy walks of length 2^i * ell from each of u and v.
FindPathResult find_path(const Graph& g, Vertex u, Vertex v, std::uint64_t k, int i, std::uint64_t ell,
                         RandomStream& rng, QueryLedger& ledger);

struct BadEventCounts {
    std::uint64_t type1 = 0;
    std::uint64_t type2 = 0;
    std::uint64_t type3 = 0;

    std::uint64_t total() const noexcept { return type1 + type2 + type3; }
    BadEventCounts& operator+=(const BadEventCounts& o) noexcept {
        type1 += o.type1;
        type2 += o.type2;
        type3 += o.type3;
        return *this;
    }
};

/// One biclique iteration: which elements, and for every (a, b) the FindPath call.
struct BicliqueGrid {
    std::vector<Vertex> a;                          ///< multiset A, by walk index
    std::vector<Vertex> b;                          ///< multiset B
    std::vector<std::vector<FindPathResult>> calls; ///< calls[ia][ib]
    std::size_t tau = 0;                            ///< midpoint 2^(i-1) * ell
};

/// Type 1: triples (c, a, b) with c not a, b whose walks meet P_{a,b}.
/// Type 2: triples (a, b, b') (and (b, a, a')) where a second half of a walk
/// in W(a->b) meets P_{a,b'}. Type 3: pairs (a, b) with a colliding walk pair
/// that also meets at a time min(t1, t2) <= tau. Every walk of a call counts.
BadEventCounts detect_bad_events(const BicliqueGrid& grid);

/// K_{|A|,|B|} model from the path grid: A elements are pattern vertices
/// 0..|A|-1, B elements follow. Absent unless every call found a path and the
/// cleaned paths are disjoint; never returns an invalid model.
std::optional<MinorEmbedding> assemble_biclique_minor(const Graph& g, const BicliqueGrid& grid);

/// Model of h in g from a model of k in g and a model of h in k.
MinorEmbedding compose_embeddings(const MinorEmbedding& k_in_g, const MinorEmbedding& h_in_k);

struct PhaseCounters {
    int i = 0;
    std::uint64_t iterations = 0;
    std::uint64_t findpath_calls = 0;
    std::uint64_t findpath_successes = 0;
    std::uint64_t walks = 0;
    std::uint64_t complete_grids = 0;
    std::uint64_t minors_found = 0;
    std::uint64_t assembled = 0;
    std::uint64_t assembly_failures = 0;
    std::uint64_t failures_without_bad_events = 0;
    BadEventCounts bad_events;
};

enum class Provenance { none, exhaustive, local_search, biclique };
enum class TesterOutcome { accept, minor_found, budget_exceeded };

std::string to_string(Provenance p);
std::string to_string(TesterOutcome o);

struct LocalSearchResult {
    std::optional<MinorEmbedding> embedding;
    std::size_t set_size = 0;
    std::uint64_t walks = 0;
    MinorStatus status = MinorStatus::absent;
};

/// Walks of every length 1..max_len from s; endpoints plus s form B; exact search on G[B].
LocalSearchResult local_search(const Graph& g, Vertex s, const TesterConfig& cfg, RandomStream& rng,
                               QueryLedger& ledger);

struct BicliqueResult {
    std::optional<MinorEmbedding> embedding;   ///< from the exact search on F
    std::optional<MinorEmbedding> assembled;   ///< K_{|A|,|B|} model built from the paths
    int phase = -1;                            ///< i of the returning iteration
    std::vector<Vertex> f_vertices;            ///< F of that iteration
    std::vector<Edge> f_edges;
    std::vector<PhaseCounters> phases;
    bool budget_hit = false;
};

BicliqueResult find_biclique(const Graph& g, Vertex s, const TesterConfig& cfg, RandomStream& rng,
                             QueryLedger& ledger);

struct TesterReport {
    TesterOutcome outcome = TesterOutcome::accept;
    Provenance provenance = Provenance::none;
    int biclique_phase = -1;
    std::optional<MinorEmbedding> embedding;
    QueryCounts queries;
    std::uint64_t repeats = 0;
    std::uint64_t local_search_walks = 0;
    std::size_t largest_local_set = 0;
    std::uint64_t minor_calls = 0;
    std::uint64_t minor_budget_hits = 0;
    std::vector<PhaseCounters> phases;   ///< aggregated over repeats, by i
    BadEventCounts bad_events;
};

TesterReport find_minor(const Graph& g, const TesterConfig& cfg);

std::string format_report(const TesterReport& report, const TesterConfig& cfg);
std::string report_csv_header();
std::string report_csv_row(const TesterReport& report, const TesterConfig& cfg);

}  // namespace hminor
