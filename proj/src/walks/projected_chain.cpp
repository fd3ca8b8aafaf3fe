#include <algorithm>
#include <cmath>

#include "hminor/walks.hpp"

namespace hminor {
namespace {

std::vector<Vertex> member_set(std::span<const Vertex> S, std::size_t n) {
    std::vector<Vertex> out(S.begin(), S.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw UsageError("projected chain needs a non-empty set");
    if (out.back() >= n) throw UsageError("set member " + std::to_string(out.back()) + " out of range");
    return out;
}

// Runs hop lengths up to t_cap per source, stopping a source early once its
// residual falls to residual_target (exactly zero when the target is 0).
ProjectedChain build(const LazyOperator& op, std::span<const Vertex> S, std::size_t t_cap, double residual_target,
                     bool keep_entries) {
    if (t_cap == 0) throw UsageError("hop truncation must be at least 1");
    ProjectedChain chain;
    chain.graph_size = op.size();
    chain.members = member_set(S, op.size());
    const std::size_t n = op.size();
    const std::size_t k = chain.members.size();
    chain.one_hop.assign(k * k, 0.0);
    chain.truncated_length.assign(k, 0.0);
    chain.residual.assign(k, 0.0);
    if (keep_entries) chain.entries.resize(k);

    std::vector<double> outside(n, 1.0);
    for (Vertex v : chain.members) outside[v] = 0.0;
    const bool complement_empty = (k == n);

    std::vector<double> x(n), y(n);
    std::size_t longest = 1;
    for (std::size_t a = 0; a < k; ++a) {
        std::fill(x.begin(), x.end(), 0.0);
        x[chain.members[a]] = 1.0;
        double remaining = 1.0;
        for (std::size_t t = 1; t <= t_cap; ++t) {
            op.apply(x, y);
            double landed_len = 0.0;
            for (std::size_t b = 0; b < k; ++b) {
                const double p = y[chain.members[b]];
                if (p == 0.0) continue;
                chain.one_hop[a * k + b] += p;
                landed_len += p;
                if (keep_entries)
                    chain.entries[a].push_back({static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(t), p});
            }
            chain.truncated_length[a] += static_cast<double>(t) * landed_len;
            longest = std::max(longest, t);
            if (complement_empty) {
                remaining = 0.0;
                break;
            }
            op.table().mask_multiply(y.data(), outside.data(), n);
            x.swap(y);
            remaining = op.table().sum(x.data(), n);
            if (remaining <= residual_target) break;
        }
        chain.residual[a] = std::max(remaining, 0.0);
    }
    chain.t_max = residual_target > 0.0 ? longest : t_cap;
    return chain;
}

}  // namespace

std::optional<std::size_t> ProjectedChain::index_of(Vertex v) const {
    auto it = std::lower_bound(members.begin(), members.end(), v);
    if (it == members.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - members.begin());
}

double ProjectedChain::max_residual() const {
    return residual.empty() ? 0.0 : *std::max_element(residual.begin(), residual.end());
}

ProjectedChain build_projected_chain(const LazyOperator& op, std::span<const Vertex> S, std::size_t t_max,
                                     bool keep_entries) {
    return build(op, S, t_max, 0.0, keep_entries);
}

ProjectedChain build_projected_chain(const Graph& g, std::span<const Vertex> S, std::size_t t_max,
                                     bool keep_entries) {
    return build(LazyOperator(g), S, t_max, 0.0, keep_entries);
}

ProjectedChain build_projected_chain_until(const Graph& g, std::span<const Vertex> S, double residual_target,
                                           std::size_t t_cap, bool keep_entries) {
    return build(LazyOperator(g), S, t_cap, residual_target, keep_entries);
}

std::vector<double> hop_distribution(const ProjectedChain& chain, Vertex s, std::size_t t) {
    auto start = chain.index_of(s);
    if (!start) throw UsageError("vertex " + std::to_string(s) + " is not in the projected set");
    const std::size_t k = chain.size();
    std::vector<double> pi(k, 0.0), next(k);
    pi[*start] = 1.0;
    for (std::size_t step = 0; step < t; ++step) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t a = 0; a < k; ++a) {
            if (pi[a] == 0.0) continue;
            const double* row = chain.one_hop.data() + a * k;
            for (std::size_t b = 0; b < k; ++b) next[b] += pi[a] * row[b];
        }
        pi.swap(next);
    }
    return pi;
}

KacReport kac_check(const ProjectedChain& chain, std::size_t h) {
    const std::size_t k = chain.size();
    KacReport r;
    r.target = static_cast<double>(h) * static_cast<double>(chain.graph_size) / static_cast<double>(k);
    r.residual_bound = chain.max_residual();
    r.tolerance = static_cast<double>(h) * static_cast<double>(chain.graph_size) * r.residual_bound + 1e-6;
    std::vector<double> pi(k, 1.0 / static_cast<double>(k)), next(k);
    for (std::size_t hop = 0; hop < h; ++hop) {
        for (std::size_t a = 0; a < k; ++a) r.expected_length += pi[a] * chain.truncated_length[a];
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) next[b] += pi[a] * chain.one_hop[a * k + b];
        pi.swap(next);
    }
    r.error = std::abs(r.expected_length - r.target);
    r.inconclusive = r.residual_bound >= 1e-6;
    r.pass = !r.inconclusive && r.error <= r.tolerance;
    return r;
}

double conductance(const ProjectedChain& chain, std::span<const Vertex> T) {
    const std::size_t k = chain.size();
    std::vector<char> inside(k, 0);
    std::size_t count = 0;
    for (Vertex v : T) {
        auto idx = chain.index_of(v);
        if (!idx) throw UsageError("conductance set member " + std::to_string(v) + " is not in S");
        if (!inside[*idx]) ++count;
        inside[*idx] = 1;
    }
    if (count == 0 || count == k) throw UsageError("conductance needs a proper non-empty subset of S");
    double crossing = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
        if (!inside[a]) continue;
        const double* row = chain.one_hop.data() + a * k;
        for (std::size_t b = 0; b < k; ++b)
            if (!inside[b]) crossing += row[b];
    }
    return crossing / static_cast<double>(std::min(count, k - count));
}

}  // namespace hminor
