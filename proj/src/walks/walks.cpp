#include <numeric>

#include "hminor/walks.hpp"

namespace hminor {
namespace {

// Draws one lazy step without touching the ledger; returns true if a slot was queried.
inline bool step_raw(const Graph& g, Vertex& v, RandomStream& rng) {
    const std::uint64_t u = rng();
    if (u >> 63) return false;
    const std::size_t d = g.degree_bound();
    if (d == 0) return false;
    const auto slot = static_cast<std::size_t>((static_cast<uint128>(u << 1) * d) >> 64);
    auto nb = g.neighbors(v);
    if (slot < nb.size()) v = nb[slot];
    return true;
}

void check_vertex(const Graph& g, Vertex s) {
    if (s >= g.num_vertices())
        throw UsageError("walk start " + std::to_string(s) + " out of range");
}

}  // namespace

Vertex lazy_step(const Graph& g, Vertex v, RandomStream& rng, QueryLedger& ledger) {
    check_vertex(g, v);
    if (step_raw(g, v, rng)) ledger.add_neighbor_queries();
    return v;
}

WalkPath lazy_walk(const Graph& g, Vertex s, std::size_t t, RandomStream& rng, QueryLedger& ledger) {
    check_vertex(g, s);
    WalkPath w;
    w.vertices.reserve(t + 1);
    w.vertices.push_back(s);
    std::uint64_t queries = 0;
    Vertex v = s;
    for (std::size_t k = 0; k < t; ++k) {
        queries += step_raw(g, v, rng);
        w.vertices.push_back(v);
    }
    ledger.add_neighbor_queries(queries);
    return w;
}

Vertex lazy_walk_endpoint(const Graph& g, Vertex s, std::size_t t, RandomStream& rng, QueryLedger& ledger) {
    check_vertex(g, s);
    std::uint64_t queries = 0;
    Vertex v = s;
    for (std::size_t k = 0; k < t; ++k) queries += step_raw(g, v, rng);
    ledger.add_neighbor_queries(queries);
    return v;
}

LazyOperator::LazyOperator(const Graph& g, const kernels::KernelTable* table)
    : adj_(kernels::PaddedAdjacency::from_graph(g)), table_(table ? table : &kernels::active()) {}

void LazyOperator::apply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != adj_.n || y.size() != adj_.n) throw UsageError("operator dimension mismatch");
    table_->lazy_apply(adj_, x.data(), y.data());
}

void LazyOperator::apply_power(std::vector<double>& x, std::size_t t) const {
    scratch_.resize(adj_.n);
    for (std::size_t k = 0; k < t; ++k) {
        table_->lazy_apply(adj_, x.data(), scratch_.data());
        x.swap(scratch_);
    }
}

double DistVec::mass() const { return std::accumulate(p.begin(), p.end(), 0.0); }

DistVec walk_distribution(const LazyOperator& op, Vertex s, std::size_t t) {
    if (s >= op.size()) throw UsageError("distribution source " + std::to_string(s) + " out of range");
    DistVec out;
    out.p.assign(op.size(), 0.0);
    out.p[s] = 1.0;
    op.apply_power(out.p, t);
    return out;
}

DistVec walk_distribution(const Graph& g, Vertex s, std::size_t t) {
    return walk_distribution(LazyOperator(g), s, t);
}

}  // namespace hminor
