#include <algorithm>
#include <cmath>
#include <numeric>

#include "hminor/strata.hpp"

namespace hminor {

double PartitionProfile::min_probability_at(std::size_t n, double delta, int i) const {
    if (min_probability) return *min_probability;
    return 1.0 / (10.0 * std::pow(static_cast<double>(n), delta * (i + 6)));
}

std::size_t PartitionProfile::reach_length_at(std::size_t n, double delta, int i) const {
    if (reach_length) return *reach_length;
    const double v = 160.0 * std::pow(static_cast<double>(n), delta * (i + 7)) / alpha;
    return v >= 1e18 ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(v);
}

double PartitionProfile::reach_probability_at(std::size_t n, double delta, int i) const {
    if (reach_probability) return *reach_probability;
    return alpha / std::pow(static_cast<double>(n), delta * (2 * i + 14));
}

PartitionProfile PartitionProfile::theory(std::size_t n, double epsilon, double delta, int r) {
    if (n < 2) throw UsageError("theory partition profile needs n >= 2");
    const double nd = static_cast<double>(n);
    const double r4 = std::pow(static_cast<double>(r), 4);
    PartitionProfile p;
    p.name = "theory";
    p.alpha = epsilon / (50.0 * r4 * std::log(nd));
    p.i_first = 1;
    p.i_last = static_cast<int>(5 * r4);
    p.hop_sweep = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::pow(nd, delta))));
    p.conductance_max = std::pow(nd, -delta / 4.0);
    return p;
}

std::size_t count_cut_edges(const Graph& g, std::span<const Vertex> A, std::span<const Vertex> B) {
    std::size_t cut = 0;
    for (Vertex u : A)
        for (Vertex w : g.neighbors(u))
            if (std::binary_search(B.begin(), B.end(), w)) ++cut;
    return cut;
}

std::optional<LowConductancePiece> find_low_conductance_piece(const ProjectedChain& chain, Vertex s,
                                                              std::size_t hop_sweep, double p_min, double phi_max) {
    auto start = chain.index_of(s);
    if (!start) throw UsageError("seed " + std::to_string(s) + " is not in S");
    const std::size_t k = chain.size();
    if (k < 2) return std::nullopt;
    std::vector<double> pi(k, 0.0), next(k);
    pi[*start] = 1.0;
    std::vector<std::size_t> order(k);
    std::vector<char> inside(k);
    for (std::size_t t = 1; t <= hop_sweep; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t a = 0; a < k; ++a) {
            if (pi[a] == 0.0) continue;
            const double* row = chain.one_hop.data() + a * k;
            for (std::size_t b = 0; b < k; ++b) next[b] += pi[a] * row[b];
        }
        pi.swap(next);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (pi[a] != pi[b]) return pi[a] > pi[b];
            return a < b;   // members are sorted, so index order is vertex order
        });
        std::fill(inside.begin(), inside.end(), 0);
        double crossing = 0.0;
        for (std::size_t size = 1; 2 * size <= k; ++size) {
            const std::size_t u = order[size - 1];
            if (pi[u] < p_min) break;
            const double* row = chain.one_hop.data() + u * k;
            double gained = 0.0, lost = 0.0;
            for (std::size_t b = 0; b < k; ++b) {
                if (b == u) continue;
                if (inside[b]) lost += chain.one_hop[b * k + u];
                else gained += row[b];
            }
            inside[u] = 1;
            crossing += gained - lost;
            if (crossing / static_cast<double>(size) < phi_max) {
                LowConductancePiece piece;
                for (std::size_t j = 0; j < size; ++j) piece.piece.push_back(chain.members[order[j]]);
                std::sort(piece.piece.begin(), piece.piece.end());
                piece.hops = t;
                piece.min_probability = pi[u];
                piece.conductance = conductance(chain, piece.piece);
                if (piece.conductance < phi_max) return piece;
            }
        }
    }
    return std::nullopt;
}

std::optional<LowConductancePiece> find_low_conductance_piece(const ProjectedChain& chain, Vertex s, int i,
                                                              double delta, const PartitionProfile& profile) {
    return find_low_conductance_piece(chain, s, profile.hop_sweep,
                                      profile.min_probability_at(chain.graph_size, delta, i),
                                      profile.conductance_max);
}

}  // namespace hminor
