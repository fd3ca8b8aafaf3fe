#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hminor/graph.hpp"
#include "hminor/kernels.hpp"
#include "hminor/rng.hpp"

namespace hminor {

// ---------------------------------------------------------------- sampled walks

/// Vertex sequence of a lazy walk; vertices[0] is the start.
struct WalkPath {
    std::vector<Vertex> vertices;

    Vertex start() const { return vertices.front(); }
    Vertex end() const { return vertices.back(); }
    std::size_t length() const { return vertices.size() - 1; }
    Vertex at(std::size_t t) const { return vertices[t]; }
};

/// One lazy step: stay with probability 1/2, else query a uniform slot in [1, d]
/// and move if it is occupied.
Vertex lazy_step(const Graph& g, Vertex v, RandomStream& rng, QueryLedger& ledger);

/// t lazy steps from s. Each non-lazy step costs exactly one neighbour query.
WalkPath lazy_walk(const Graph& g, Vertex s, std::size_t t, RandomStream& rng, QueryLedger& ledger);

/// Endpoint of a t-step lazy walk, with the same randomness use as lazy_walk.
Vertex lazy_walk_endpoint(const Graph& g, Vertex s, std::size_t t, RandomStream& rng, QueryLedger& ledger);

// ---------------------------------------------------------------- exact operator

/// The lazy transition matrix M as a linear operator on R^n (M is symmetric).
class LazyOperator {
public:
    explicit LazyOperator(const Graph& g, const kernels::KernelTable* table = nullptr);

    std::size_t size() const noexcept { return adj_.n; }
    const kernels::KernelTable& table() const noexcept { return *table_; }

    /// y = M x; x and y must not alias.
    void apply(std::span<const double> x, std::span<double> y) const;
    /// x <- M^t x
    void apply_power(std::vector<double>& x, std::size_t t) const;

private:
    kernels::PaddedAdjacency adj_;
    const kernels::KernelTable* table_;
    mutable std::vector<double> scratch_;
};

/// Exact t-step distribution from a vertex.
struct DistVec {
    std::vector<double> p;

    double at(Vertex v) const { return p[v]; }
    double mass() const;
};

DistVec walk_distribution(const Graph& g, Vertex s, std::size_t t);
DistVec walk_distribution(const LazyOperator& op, Vertex s, std::size_t t);

// ---------------------------------------------------------------- returning walks

/// q[R],s,i: the vector (P_R^T M^ell P_R)^(2^i) 1_s, supported on R.
struct ReturningVec {
    Vertex source = 0;
    int phase = 0;
    std::size_t period = 1;
    std::vector<Vertex> support;   ///< R, sorted
    std::vector<double> values;    ///< aligned with support

    double at(Vertex u) const;     ///< 0 outside R
    double l1() const;
    double l2_squared() const;
    double linf() const;
};

/// Iterative evaluation: 2^i rounds of (ell operator steps, then restriction to R).
ReturningVec returning_vector(const Graph& g, std::span<const Vertex> R, Vertex s, int i, std::size_t ell);
ReturningVec returning_vector(const LazyOperator& op, std::span<const Vertex> R, Vertex s, int i,
                              std::size_t ell);

/// Both sides of q[R],s,i+1 (u) = <q[R],s,i , q[R],u,i>.
struct ProductIdentity {
    double lhs = 0;
    double rhs = 0;
};
ProductIdentity returning_product_identity(const LazyOperator& op, std::span<const Vertex> R, Vertex s, Vertex u,
                                           int i, std::size_t ell);

/// Average l1 mass of q[R],s,i over s in R, against (|R|/n)^(2^i).
struct MassBound {
    double average = 0;
    double bound = 0;
};
MassBound returning_mass_lower_bound(const LazyOperator& op, std::span<const Vertex> R, int i, std::size_t ell);

/// A sampled walk of length 2^i * ell and whether it sits in R at every multiple of ell.
struct ReturningSample {
    WalkPath walk;
    bool returning = false;
};
ReturningSample returning_walk_sample(const Graph& g, std::span<const Vertex> R, Vertex s, int i, std::size_t ell,
                                      RandomStream& rng, QueryLedger& ledger);

/// Dense symmetric |R| x |R| matrix, row-major.
struct DenseSymmetric {
    std::size_t dim = 0;
    std::vector<double> data;

    double operator()(std::size_t a, std::size_t b) const { return data[a * dim + b]; }
    std::span<const double> row(std::size_t a) const { return {data.data() + a * dim, dim}; }
};

/// Returning matrices for every source in R at once: result[i](a, b) =
/// q[R],R[a],i (R[b]) for i = 0..i_max. Level 0 is assembled column by
/// column from the operator; higher levels by squaring with the dot kernel.
std::vector<DenseSymmetric> returning_matrices(const LazyOperator& op, std::span<const Vertex> R,
                                               std::size_t ell, int i_max);

// ---------------------------------------------------------------- projected chain

/// Walk on S that only records visits to S (hops). e^(t)_{u,v} is the chance that
/// the first return to S from u happens at step t and lands on v. Hop lengths are
/// truncated at t_max; the mass still outside S afterwards is the residual.
struct ProjectedChain {
    struct Entry {
        std::uint32_t target;      ///< index into members
        std::uint32_t length;      ///< t
        double probability;
    };

    std::size_t graph_size = 0;
    std::size_t t_max = 0;
    std::vector<Vertex> members;               ///< S, sorted
    std::vector<std::vector<Entry>> entries;   ///< per member; empty when not kept
    std::vector<double> one_hop;               ///< |S| x |S| aggregate hop matrix, row-major
    std::vector<double> truncated_length;      ///< E[len; len <= t_max] per member
    std::vector<double> residual;              ///< per member

    std::size_t size() const noexcept { return members.size(); }
    std::optional<std::size_t> index_of(Vertex v) const;
    double transition(std::size_t a, std::size_t b) const { return one_hop[a * members.size() + b]; }
    double max_residual() const;
};

ProjectedChain build_projected_chain(const Graph& g, std::span<const Vertex> S, std::size_t t_max,
                                     bool keep_entries = true);
ProjectedChain build_projected_chain(const LazyOperator& op, std::span<const Vertex> S, std::size_t t_max,
                                     bool keep_entries = true);

/// Grows t_max (doubling from 64) until the residual is below target or t_cap is reached.
ProjectedChain build_projected_chain_until(const Graph& g, std::span<const Vertex> S, double residual_target,
                                           std::size_t t_cap, bool keep_entries = false);

/// Distribution after t hops of the projected chain from s, indexed like members.
std::vector<double> hop_distribution(const ProjectedChain& chain, Vertex s, std::size_t t);

/// Hop-length sanity check: from the uniform distribution on S, h hops take
/// h * n / |S| steps in expectation.
struct KacReport {
    double expected_length = 0;
    double target = 0;
    double error = 0;
    double residual_bound = 0;
    double tolerance = 0;
    bool inconclusive = false;
    bool pass = false;
};
KacReport kac_check(const ProjectedChain& chain, std::size_t h);

/// Conductance of T inside S under the aggregated one-hop chain.
/// T and S \ T must both be non-empty.
double conductance(const ProjectedChain& chain, std::span<const Vertex> T);

// ---------------------------------------------------------------- LS curve

/// h(k) = sum_{j<=k} (p_j - 1/|S|) over probabilities sorted in decreasing order
/// (ties by vertex id), linearly interpolated between integers.
struct LSCurve {
    std::vector<Vertex> order;            ///< members by decreasing probability
    std::vector<double> sorted_probability;
    std::vector<double> values;           ///< h(0..|S|)

    std::size_t size() const noexcept { return order.size(); }
    double at(double x) const;
    /// Increment h(k) - h(k-1), computed directly as p_k - 1/|S|.
    double slope(std::size_t k) const;
    std::vector<Vertex> level_set(std::size_t k) const;
};

LSCurve ls_curve(std::span<const Vertex> members, std::span<const double> probability);
LSCurve ls_curve(const ProjectedChain& chain, Vertex s, std::size_t t);

struct LSLemmaReport {
    double lhs = 0;
    double rhs = 0;
    double phi = 0;
    double slack = 0;   ///< rhs - lhs
    bool pass = false;
};

/// h_t(k) <= (h_{t-1}(k - 2 m Phi) + h_{t-1}(k + 2 m Phi)) / 2 with m = min(k, |S|-k)
/// and Phi the conductance of the level set L_{k,t}; arguments clamp to [0, |S|].
LSLemmaReport ls_lemma_check(const ProjectedChain& chain, Vertex s, std::size_t t, std::size_t k,
                             double tolerance = 1e-9);

}  // namespace hminor
