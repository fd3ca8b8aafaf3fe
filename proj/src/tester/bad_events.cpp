#include <unordered_set>

#include "hminor/tester.hpp"

namespace hminor {
namespace {

using VertexSet = std::unordered_set<Vertex>;

void add_walk(VertexSet& set, const WalkPath& w, std::size_t from = 0) {
    for (std::size_t t = from; t < w.vertices.size(); ++t) set.insert(w.vertices[t]);
}

bool meets(const WalkPath& w, std::size_t from, const VertexSet& set) {
    for (std::size_t t = from; t < w.vertices.size(); ++t)
        if (set.count(w.vertices[t])) return true;
    return false;
}

}  // namespace

BadEventCounts detect_bad_events(const BicliqueGrid& grid) {
    BadEventCounts out;
    const std::size_t sa = grid.a.size(), sb = grid.b.size();
    if (sa == 0 || sb == 0 || grid.calls.empty()) return out;
    auto call_done = [&](std::size_t ia, std::size_t ib) {
        return ia < grid.calls.size() && ib < grid.calls[ia].size();
    };

    // W_c for every element: elements 0..sa-1 are A, sa.. are B.
    std::vector<VertexSet> walked(sa + sb);
    for (std::size_t ia = 0; ia < sa; ++ia)
        for (std::size_t ib = 0; ib < sb; ++ib) {
            if (!call_done(ia, ib)) continue;
            for (const WalkPath& w : grid.calls[ia][ib].from_u) add_walk(walked[ia], w);
            for (const WalkPath& w : grid.calls[ia][ib].from_v) add_walk(walked[sa + ib], w);
        }
    // Connector paths P_{a,b}.
    std::vector<std::vector<std::optional<VertexSet>>> conn(sa, std::vector<std::optional<VertexSet>>(sb));
    for (std::size_t ia = 0; ia < sa; ++ia)
        for (std::size_t ib = 0; ib < sb; ++ib) {
            if (!call_done(ia, ib) || !grid.calls[ia][ib].found()) continue;
            VertexSet p;
            add_walk(p, grid.calls[ia][ib].walk_u());
            add_walk(p, grid.calls[ia][ib].walk_v());
            conn[ia][ib] = std::move(p);
        }

    for (std::size_t ia = 0; ia < sa; ++ia)
        for (std::size_t ib = 0; ib < sb; ++ib) {
            if (!conn[ia][ib]) continue;
            const VertexSet& p = *conn[ia][ib];
            for (std::size_t c = 0; c < sa + sb; ++c) {
                if (c == ia || c == sa + ib) continue;
                for (Vertex v : p)
                    if (walked[c].count(v)) {
                        ++out.type1;
                        break;
                    }
            }
        }

    for (std::size_t ia = 0; ia < sa; ++ia)
        for (std::size_t ib = 0; ib < sb; ++ib) {
            if (!call_done(ia, ib)) continue;
            const FindPathResult& call = grid.calls[ia][ib];
            for (std::size_t ob = 0; ob < sb; ++ob) {
                if (ob == ib || !conn[ia][ob]) continue;
                for (const WalkPath& w : call.from_u)
                    if (meets(w, grid.tau, *conn[ia][ob])) {
                        ++out.type2;
                        break;
                    }
            }
            for (std::size_t oa = 0; oa < sa; ++oa) {
                if (oa == ia || !conn[oa][ib]) continue;
                for (const WalkPath& w : call.from_v)
                    if (meets(w, grid.tau, *conn[oa][ib])) {
                        ++out.type2;
                        break;
                    }
            }
        }

    for (std::size_t ia = 0; ia < sa; ++ia)
        for (std::size_t ib = 0; ib < sb; ++ib) {
            if (!call_done(ia, ib)) continue;
            const FindPathResult& call = grid.calls[ia][ib];
            bool bad = false;
            for (const WalkPath& wa : call.from_u) {
                for (const WalkPath& wb : call.from_v) {
                    if (wa.end() != wb.end()) continue;
                    VertexSet sa_all, sb_all;
                    add_walk(sa_all, wa);
                    add_walk(sb_all, wb);
                    bool early = false;
                    for (std::size_t t = 0; t <= grid.tau && t < wa.vertices.size() && !early; ++t)
                        early = sb_all.count(wa.vertices[t]) > 0;
                    for (std::size_t t = 0; t <= grid.tau && t < wb.vertices.size() && !early; ++t)
                        early = sa_all.count(wb.vertices[t]) > 0;
                    if (early) {
                        bad = true;
                        break;
                    }
                }
                if (bad) break;
            }
            if (bad) ++out.type3;
        }
    return out;
}

}  // namespace hminor
