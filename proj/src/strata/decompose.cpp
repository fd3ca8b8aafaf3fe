#include <algorithm>
#include <cmath>
#include <limits>

#include "hminor/strata.hpp"

namespace hminor {
namespace {

std::vector<Vertex> minus(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::vector<Vertex> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<Vertex> heavy_sources(const LazyOperator& op, const std::vector<Vertex>& S, std::size_t ell, int i,
                                  double bound) {
    std::vector<Vertex> out;
    if (S.empty()) return out;
    auto q = returning_matrices(op, S, ell, i + 1);
    const DenseSymmetric& top = q.back();
    for (std::size_t a = 0; a < S.size(); ++a) {
        auto row = top.row(a);
        if (op.table().sum_squares(row.data(), row.size()) >= bound) out.push_back(S[a]);
    }
    return out;
}

}  // namespace

std::vector<int> PartitionResult::label() const {
    std::vector<int> out(n, -2);
    for (std::size_t p = 0; p < pieces.size(); ++p)
        for (Vertex v : pieces[p].vertices) out[v] = static_cast<int>(p);
    for (const auto& x : excess)
        for (Vertex v : x) out[v] = -1;
    return out;
}

std::size_t PartitionResult::excess_size() const {
    std::size_t total = 0;
    for (const auto& x : excess) total += x.size();
    return total;
}

PartitionResult decompose(const Graph& g, double epsilon, double delta, std::size_t ell,
                          const PartitionProfile& profile) {
    if (!(delta > 0.0 && delta < 1.0)) throw UsageError("delta must lie in (0, 1)");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw UsageError("epsilon must lie in (0, 1]");
    if (ell == 0) throw UsageError("period must be at least 1");
    PartitionResult res;
    res.n = g.num_vertices();
    res.epsilon = epsilon;
    res.delta = delta;
    res.ell = ell;
    res.profile = profile;
    const double nd = static_cast<double>(res.n);
    const double floor_size = profile.alpha * nd;
    const std::size_t chain_hops = profile.chain_hops ? profile.chain_hops : 8 * std::max<std::size_t>(res.n, 1);
    const LazyOperator op(g);

    std::vector<Vertex> S(res.n);
    for (std::size_t v = 0; v < res.n; ++v) S[v] = static_cast<Vertex>(v);

    for (int i = profile.i_first; i <= profile.i_last; ++i) {
        const double bound = std::pow(nd, -delta * i);
        std::vector<Vertex> heavy = heavy_sources(op, S, ell, i, bound);
        while (!heavy.empty() && static_cast<double>(heavy.size()) >= floor_size) {
            ProjectedChain chain = build_projected_chain(op, S, chain_hops, false);
            std::optional<LowConductancePiece> found;
            Vertex seed = 0;
            std::size_t viable = 0;
            for (Vertex s : heavy) {
                auto piece = find_low_conductance_piece(chain, s, i, delta, profile);
                if (!piece) continue;
                ++viable;
                if (!found) {
                    found = std::move(piece);
                    seed = s;
                    if (!profile.measure_candidates) break;
                }
            }
            if (!found) {
                res.stalled_phases.push_back(i);
                break;
            }
            PartitionPiece piece;
            piece.seed = seed;
            piece.phase = i;
            piece.vertices = found->piece;
            piece.hops = found->hops;
            piece.conductance = found->conductance;
            piece.remaining_size = S.size();
            piece.candidates = heavy.size();
            if (profile.measure_candidates) piece.viable_candidates = viable;
            S = minus(S, piece.vertices);
            piece.cut_edges = count_cut_edges(g, piece.vertices, S);
            res.pieces.push_back(std::move(piece));
            heavy = heavy_sources(op, S, ell, i, bound);
        }
        S = minus(S, heavy);
        res.excess.push_back(std::move(heavy));
    }
    res.remainder = std::move(S);
    return res;
}

bool PartitionReport::ok() const {
    if (!partition_ok) return false;
    return std::all_of(bullets.begin(), bullets.end(), [](const PartitionBullet& b) { return b.pass; });
}

PartitionReport verify_partition(const Graph& g, const PartitionResult& part) {
    PartitionReport rep;
    const std::size_t n = g.num_vertices();
    const double nd = static_cast<double>(n);

    // Removal time of each vertex: (phase, sequence); excess of phase i comes
    // after every piece of phase i; the remainder is never removed.
    constexpr long long never = std::numeric_limits<long long>::max();
    std::vector<long long> removed(n, -1);
    auto stamp = [](int phase, std::size_t seq) { return static_cast<long long>(phase) * (1LL << 32) + static_cast<long long>(seq); };
    std::vector<int> hits(n, 0);
    for (std::size_t p = 0; p < part.pieces.size(); ++p)
        for (Vertex v : part.pieces[p].vertices) {
            if (v < n) {
                ++hits[v];
                removed[v] = stamp(part.pieces[p].phase, p);
            }
        }
    for (std::size_t x = 0; x < part.excess.size(); ++x)
        for (Vertex v : part.excess[x]) {
            if (v < n) {
                ++hits[v];
                removed[v] = stamp(part.profile.i_first + static_cast<int>(x), (1ULL << 31));
            }
        }
    for (Vertex v : part.remainder)
        if (v < n) {
            ++hits[v];
            removed[v] = never;
        }
    const std::size_t size_total = [&] {
        std::size_t s = part.remainder.size() + part.excess_size();
        for (const auto& p : part.pieces) s += p.vertices.size();
        return s;
    }();
    rep.partition_ok = size_total == n && std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
    if (!rep.partition_ok) rep.partition_detail = "pieces, excess and remainder do not partition V";

    const double d = static_cast<double>(g.degree_bound());
    PartitionBullet cut{"cut", true, std::numeric_limits<double>::infinity(), 0, ""};
    PartitionBullet reach{"reach", true, std::numeric_limits<double>::infinity(), 0, ""};
    const LazyOperator op(g);
    constexpr std::size_t reach_cap = 4096;
    for (std::size_t p = 0; p < part.pieces.size(); ++p) {
        const auto& piece = part.pieces[p];
        std::vector<Vertex> rest;
        const long long at = stamp(piece.phase, p);
        for (std::size_t v = 0; v < n; ++v)
            if ((removed[v] > at || removed[v] == never) && !std::binary_search(piece.vertices.begin(), piece.vertices.end(), static_cast<Vertex>(v)))
                rest.push_back(static_cast<Vertex>(v));
        const double edges = static_cast<double>(count_cut_edges(g, piece.vertices, rest));
        const double bound = 2.0 * part.profile.conductance_max * d * static_cast<double>(piece.vertices.size());
        ++cut.checked;
        cut.slack = std::min(cut.slack, bound - edges);
        if (edges > bound) {
            cut.pass = false;
            cut.detail += "piece " + std::to_string(p) + ": " + std::to_string(static_cast<long long>(edges)) +
                          " cut edges > " + std::to_string(bound) + "; ";
        }

        const std::size_t horizon = std::min(part.profile.reach_length_at(n, part.delta, piece.phase), reach_cap);
        const double need = part.profile.reach_probability_at(n, part.delta, piece.phase);
        std::vector<double> best(n, 0.0), x(n, 0.0);
        x[piece.seed] = 1.0;
        best[piece.seed] = 1.0;
        for (std::size_t t = 1; t <= horizon; ++t) {
            op.apply_power(x, 1);
            for (Vertex v : piece.vertices) best[v] = std::max(best[v], x[v]);
        }
        for (Vertex v : piece.vertices) {
            ++reach.checked;
            reach.slack = std::min(reach.slack, best[v] - need);
            if (best[v] < need) {
                reach.pass = false;
                reach.detail += "piece " + std::to_string(p) + " vertex " + std::to_string(v) + "; ";
            }
        }
    }
    if (cut.checked == 0) cut.slack = 0;
    if (reach.checked == 0) reach.slack = 0;

    PartitionBullet excess{"excess", true, 0, 1, ""};
    const double bound = part.epsilon * nd / 10.0;
    excess.slack = bound - static_cast<double>(part.excess_size());
    excess.pass = excess.slack >= 0;
    if (!excess.pass) excess.detail = "|X| = " + std::to_string(part.excess_size()) + " > " + std::to_string(bound);

    rep.bullets = {cut, reach, excess};
    return rep;
}

}  // namespace hminor
