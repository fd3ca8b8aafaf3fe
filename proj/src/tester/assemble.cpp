#include <algorithm>
#include <map>
#include <unordered_map>

#include "hminor/tester.hpp"

namespace hminor {
namespace {

// Chronological loop erasure.
std::vector<Vertex> loop_erase(const std::vector<Vertex>& seq) {
    std::vector<Vertex> out;
    std::unordered_map<Vertex, std::size_t> where;
    for (Vertex v : seq) {
        auto it = where.find(v);
        if (it != where.end()) {
            for (std::size_t k = it->second + 1; k < out.size(); ++k) where.erase(out[k]);
            out.resize(it->second + 1);
        } else {
            where[v] = out.size();
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace

std::optional<MinorEmbedding> assemble_biclique_minor(const Graph& g, const BicliqueGrid& grid) {
    const std::size_t sa = grid.a.size(), sb = grid.b.size();
    if (sa == 0 || sb == 0 || grid.calls.size() != sa) return std::nullopt;
    const std::size_t tau = grid.tau;
    std::vector<std::vector<Vertex>> sets(sa + sb);
    std::vector<EdgeWitness> witness(sa * sb);
    for (std::size_t ia = 0; ia < sa; ++ia) {
        if (grid.calls[ia].size() != sb) return std::nullopt;
        for (std::size_t ib = 0; ib < sb; ++ib) {
            const FindPathResult& call = grid.calls[ia][ib];
            if (!call.found()) return std::nullopt;
            const auto& wa = call.walk_u().vertices;
            const auto& wb = call.walk_v().vertices;
            if (wa.size() != wb.size() || tau >= wa.size()) return std::nullopt;
            const std::size_t len = wa.size() - 1;
            std::vector<Vertex> qab = loop_erase({wa.begin(), wa.begin() + static_cast<std::ptrdiff_t>(tau) + 1});
            std::vector<Vertex> qba = loop_erase({wb.begin(), wb.begin() + static_cast<std::ptrdiff_t>(tau) + 1});
            // Middle: W_a(tau..len) then W_b(len-1..tau).
            std::vector<Vertex> mid(wa.begin() + static_cast<std::ptrdiff_t>(tau), wa.end());
            for (std::size_t t = len; t-- > tau;) mid.push_back(wb[t]);
            std::unordered_map<Vertex, std::size_t> pos_ab, pos_ba;
            for (std::size_t k = 0; k < qab.size(); ++k) pos_ab[qab[k]] = k;
            for (std::size_t k = 0; k < qba.size(); ++k) pos_ba[qba[k]] = k;
            std::size_t j1 = mid.size();
            for (std::size_t j = mid.size(); j-- > 0;)
                if (pos_ab.count(mid[j])) {
                    j1 = j;
                    break;
                }
            if (j1 == mid.size()) return std::nullopt;
            std::size_t j2 = mid.size();
            for (std::size_t j = j1 + 1; j < mid.size(); ++j)
                if (pos_ba.count(mid[j])) {
                    j2 = j;
                    break;
                }
            if (j2 == mid.size()) return std::nullopt;
            const Vertex x = mid[j1], y = mid[j2];
            qab.resize(pos_ab[x] + 1);
            qba.resize(pos_ba[y] + 1);
            std::vector<Vertex> hat = loop_erase({mid.begin() + static_cast<std::ptrdiff_t>(j1) + 1,
                                                  mid.begin() + static_cast<std::ptrdiff_t>(j2)});
            auto& ca = sets[ia];
            ca.insert(ca.end(), qab.begin(), qab.end());
            ca.insert(ca.end(), hat.begin(), hat.end());
            auto& cb = sets[sa + ib];
            cb.insert(cb.end(), qba.begin(), qba.end());
            witness[ia * sb + ib] = {static_cast<Vertex>(ia), static_cast<Vertex>(sa + ib), hat.empty() ? x : hat.back(), y};
        }
    }
    MinorEmbedding emb;
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        emb.branch_sets.push_back(std::move(s));
    }
    emb.witnesses = std::move(witness);
    Graph k = complete_bipartite(sa, sb);
    if (!validate_embedding(g, k, emb).empty()) return std::nullopt;
    return emb;
}

MinorEmbedding compose_embeddings(const MinorEmbedding& k_in_g, const MinorEmbedding& h_in_k) {
    MinorEmbedding out;
    for (const auto& kset : h_in_k.branch_sets) {
        std::vector<Vertex> set;
        for (Vertex kv : kset) set.insert(set.end(), k_in_g.branch_sets[kv].begin(), k_in_g.branch_sets[kv].end());
        std::sort(set.begin(), set.end());
        out.branch_sets.push_back(std::move(set));
    }
    std::map<std::pair<Vertex, Vertex>, const EdgeWitness*> by_edge;
    for (const EdgeWitness& w : k_in_g.witnesses) by_edge[{std::min(w.hx, w.hy), std::max(w.hx, w.hy)}] = &w;
    for (const EdgeWitness& w : h_in_k.witnesses) {
        const EdgeWitness* kw = by_edge.at({std::min(w.gu, w.gv), std::max(w.gu, w.gv)});
        const bool forward = kw->hx == w.gu;
        out.witnesses.push_back({w.hx, w.hy, forward ? kw->gu : kw->gv, forward ? kw->gv : kw->gu});
    }
    return out;
}

}  // namespace hminor
