#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <sstream>
#include <unordered_map>

#include "hminor/tester.hpp"

namespace hminor {
namespace {

MinorSearchOptions search_options(const TesterConfig& cfg) {
    MinorSearchOptions o;
    o.node_limit = cfg.minor_node_limit;
    if (cfg.minor_time_budget)
        o.deadline = std::chrono::steady_clock::now() +
                     std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                         std::chrono::duration<double>(*cfg.minor_time_budget));
    return o;
}

// Exact search on a subgraph given by its vertex ids in g; the model comes back in g's ids.
MinorSearchResult search_in_part(const Graph& g, const Graph& part, const std::vector<Vertex>& to_g,
                                 const TesterConfig& cfg) {
    MinorSearchResult res = search_minor(part, cfg.pattern, search_options(cfg));
    if (res.embedding) {
        res.embedding = relabel(*res.embedding, to_g);
        if (!validate_embedding(g, cfg.pattern, *res.embedding).empty()) {
            res.embedding.reset();
            res.status = MinorStatus::absent;
        }
    }
    return res;
}

PhaseCounters& phase_slot(std::vector<PhaseCounters>& phases, int i) {
    for (auto& p : phases)
        if (p.i == i) return p;
    phases.push_back({});
    phases.back().i = i;
    return phases.back();
}

void merge_phase(PhaseCounters& into, const PhaseCounters& from) {
    into.iterations += from.iterations;
    into.findpath_calls += from.findpath_calls;
    into.findpath_successes += from.findpath_successes;
    into.walks += from.walks;
    into.complete_grids += from.complete_grids;
    into.minors_found += from.minors_found;
    into.assembled += from.assembled;
    into.assembly_failures += from.assembly_failures;
    into.failures_without_bad_events += from.failures_without_bad_events;
    into.bad_events += from.bad_events;
}

}  // namespace

std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::none: return "none";
    case Provenance::exhaustive: return "exhaustive";
    case Provenance::local_search: return "local-search";
    case Provenance::biclique: return "biclique";
    }
    return "none";
}

std::string to_string(TesterOutcome o) {
    switch (o) {
    case TesterOutcome::accept: return "accept";
    case TesterOutcome::minor_found: return "minor-found";
    case TesterOutcome::budget_exceeded: return "budget-exceeded";
    }
    return "accept";
}

LocalSearchResult local_search(const Graph& g, Vertex s, const TesterConfig& cfg, RandomStream& rng,
                               QueryLedger& ledger) {
    LocalSearchResult out;
    const std::uint64_t base = rng();
    std::vector<Vertex> b{s};
    b.reserve(cfg.local_search_max_len * cfg.walks_per_len + 1);
    for (std::uint64_t h = 1; h <= cfg.local_search_max_len; ++h)
        for (std::uint64_t j = 0; j < cfg.walks_per_len; ++j) {
            RandomStream walk = derive_stream(base, {h, j});
            b.push_back(lazy_walk_endpoint(g, s, h, walk, ledger));
            ++out.walks;
        }
    InducedSubgraph sub = induced_subgraph(g, b, ledger);
    out.set_size = sub.to_original.size();
    MinorSearchResult res = search_in_part(g, sub.graph, sub.to_original, cfg);
    out.status = res.status;
    out.embedding = std::move(res.embedding);
    return out;
}

BicliqueResult find_biclique(const Graph& g, Vertex s, const TesterConfig& cfg, RandomStream& rng,
                             QueryLedger& ledger) {
    BicliqueResult out;
    const std::uint64_t base = rng();
    const std::size_t side = cfg.biclique_side;
    std::optional<std::optional<MinorEmbedding>> h_in_k;
    for (int i = cfg.i_min; i <= cfg.i_max; ++i) {
        PhaseCounters pc;
        pc.i = i;
        pc.iterations = 1;
        BicliqueGrid grid;
        const std::uint64_t seed_len = cfg.ell << (i + 1);
        for (std::size_t j = 0; j < 2 * side; ++j) {
            RandomStream walk = derive_stream(base, {static_cast<std::uint64_t>(i), 0, j});
            Vertex end = lazy_walk_endpoint(g, s, seed_len, walk, ledger);
            (j < side ? grid.a : grid.b).push_back(end);
        }
        grid.tau = static_cast<std::size_t>((cfg.ell << i) / 2);
        const std::uint64_t k = cfg.k(i);
        bool complete = true;
        grid.calls.resize(side);
        for (std::size_t ia = 0; ia < side && complete; ++ia)
            for (std::size_t ib = 0; ib < side; ++ib) {
                RandomStream call_rng = derive_stream(base, {static_cast<std::uint64_t>(i), 1, ia, ib});
                grid.calls[ia].push_back(find_path(g, grid.a[ia], grid.b[ib], k, i, cfg.ell, call_rng, ledger));
                ++pc.findpath_calls;
                pc.walks += 2 * k;
                if (!grid.calls[ia].back().found()) {
                    complete = false;
                    break;
                }
                ++pc.findpath_successes;
            }
        if (!complete) {
            out.phases.push_back(pc);
            continue;
        }
        ++pc.complete_grids;

        // F: the union of the returned walk pairs.
        std::unordered_map<Vertex, Vertex> local;
        std::vector<Vertex> to_g;
        std::vector<std::pair<Vertex, Vertex>> fe;
        auto id = [&](Vertex v) {
            auto [it, fresh] = local.emplace(v, static_cast<Vertex>(to_g.size()));
            if (fresh) to_g.push_back(v);
            return it->second;
        };
        for (const auto& row : grid.calls)
            for (const FindPathResult& call : row)
                for (const WalkPath* w : {&call.walk_u(), &call.walk_v()})
                    for (std::size_t t = 0; t < w->vertices.size(); ++t) {
                        Vertex x = id(w->vertices[t]);
                        if (t > 0 && w->vertices[t] != w->vertices[t - 1]) {
                            Vertex y = id(w->vertices[t - 1]);
                            fe.push_back({std::min(x, y), std::max(x, y)});
                        }
                    }
        std::sort(fe.begin(), fe.end());
        fe.erase(std::unique(fe.begin(), fe.end()), fe.end());
        // Relabel so that F's ids follow g's order, then build F.
        std::vector<Vertex> order(to_g.size());
        for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
        std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return to_g[a] < to_g[b]; });
        std::vector<Vertex> rank(to_g.size());
        for (Vertex r = 0; r < order.size(); ++r) rank[order[r]] = r;
        std::vector<std::vector<Vertex>> adj(to_g.size());
        for (auto [x, y] : fe) {
            adj[rank[x]].push_back(rank[y]);
            adj[rank[y]].push_back(rank[x]);
        }
        for (auto& l : adj) std::sort(l.begin(), l.end());
        std::vector<Vertex> sorted_g(to_g.size());
        for (Vertex r = 0; r < order.size(); ++r) sorted_g[r] = to_g[order[r]];
        Graph f = Graph::from_adjacency(adj.size(), g.degree_bound(), adj);

        MinorSearchResult res = search_in_part(g, f, sorted_g, cfg);
        if (res.status == MinorStatus::budget_exceeded) out.budget_hit = true;
        if (cfg.diagnostics) {
            BadEventCounts bad = detect_bad_events(grid);
            pc.bad_events += bad;
            if (auto kmodel = assemble_biclique_minor(g, grid)) {
                ++pc.assembled;
                if (!h_in_k) h_in_k = has_minor(complete_bipartite(side, side), cfg.pattern);
                if (*h_in_k) {
                    MinorEmbedding composed = compose_embeddings(*kmodel, **h_in_k);
                    if (validate_embedding(g, cfg.pattern, composed).empty()) out.assembled = std::move(composed);
                }
            } else {
                ++pc.assembly_failures;
                if (bad.total() == 0) ++pc.failures_without_bad_events;
            }
        }
        if (res.embedding || out.assembled) {
            ++pc.minors_found;
            out.embedding = res.embedding ? std::move(res.embedding) : out.assembled;
            out.phase = i;
            for (auto [x, y] : fe) out.f_edges.push_back({std::min(to_g[x], to_g[y]), std::max(to_g[x], to_g[y])});
            out.f_vertices = sorted_g;
            out.phases.push_back(pc);
            return out;
        }
        out.phases.push_back(pc);
    }
    return out;
}

TesterReport find_minor(const Graph& g, const TesterConfig& cfg) {
    auto problems = cfg.problems();
    if (!problems.empty()) throw UsageError("tester configuration: " + problems.front());
    if (cfg.n != g.num_vertices()) throw UsageError("tester configuration was resolved for a different n");
    TesterReport rep;
    QueryLedger ledger;
    auto finish = [&](TesterReport& r) -> TesterReport& {
        r.queries = ledger.snapshot();
        std::sort(r.phases.begin(), r.phases.end(), [](const auto& a, const auto& b) { return a.i < b.i; });
        for (const auto& p : r.phases) r.bad_events += p.bad_events;
        if (r.outcome != TesterOutcome::minor_found && r.minor_budget_hits > 0) r.outcome = TesterOutcome::budget_exceeded;
        return r;
    };
    if (g.num_vertices() == 0) return finish(rep);
    if (cfg.epsilon < cfg.epsilon_cutoff) {
        ledger.add_neighbor_queries(static_cast<std::uint64_t>(g.num_vertices()) * g.degree_bound());
        std::vector<Vertex> all(g.num_vertices());
        for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
        ++rep.minor_calls;
        MinorSearchResult res = search_in_part(g, g, all, cfg);
        if (res.status == MinorStatus::budget_exceeded) ++rep.minor_budget_hits;
        if (res.embedding) {
            rep.outcome = TesterOutcome::minor_found;
            rep.provenance = Provenance::exhaustive;
            rep.embedding = std::move(res.embedding);
        }
        return finish(rep);
    }
    for (std::uint64_t t = 0; t < cfg.outer_repeats; ++t) {
        ++rep.repeats;
        RandomStream pick = derive_stream(cfg.seed, {t, 0});
        const Vertex s = sample_vertex(g, pick, ledger);

        RandomStream ls_rng = derive_stream(cfg.seed, {t, 1});
        LocalSearchResult ls = local_search(g, s, cfg, ls_rng, ledger);
        ++rep.minor_calls;
        rep.local_search_walks += ls.walks;
        rep.largest_local_set = std::max(rep.largest_local_set, ls.set_size);
        if (ls.status == MinorStatus::budget_exceeded) ++rep.minor_budget_hits;
        if (ls.embedding) {
            rep.outcome = TesterOutcome::minor_found;
            rep.provenance = Provenance::local_search;
            rep.embedding = std::move(ls.embedding);
            return finish(rep);
        }

        RandomStream bc_rng = derive_stream(cfg.seed, {t, 2});
        BicliqueResult bc = find_biclique(g, s, cfg, bc_rng, ledger);
        for (const auto& p : bc.phases) {
            merge_phase(phase_slot(rep.phases, p.i), p);
            rep.minor_calls += p.complete_grids;
        }
        if (bc.budget_hit) ++rep.minor_budget_hits;
        if (bc.embedding) {
            rep.outcome = TesterOutcome::minor_found;
            rep.provenance = Provenance::biclique;
            rep.biclique_phase = bc.phase;
            rep.embedding = std::move(bc.embedding);
            return finish(rep);
        }
    }
    return finish(rep);
}

std::string format_report(const TesterReport& r, const TesterConfig& cfg) {
    std::ostringstream s;
    s << "outcome: " << to_string(r.outcome) << '\n';
    s << "provenance: " << to_string(r.provenance);
    if (r.provenance == Provenance::biclique) s << " (i=" << r.biclique_phase << ')';
    s << '\n';
    s << "profile: " << cfg.profile << "  n=" << cfg.n << "  r=" << cfg.r() << "  epsilon=" << cfg.epsilon
      << "  seed=" << cfg.seed << '\n';
    s << "neighbor_queries: " << r.queries.neighbor_queries << '\n';
    s << "vertex_samples: " << r.queries.vertex_samples << '\n';
    s << "induced_subgraph_queries: " << r.queries.induced_subgraph_queries << '\n';
    s << "repeats: " << r.repeats << "  local_search_walks: " << r.local_search_walks
      << "  largest_local_set: " << r.largest_local_set << '\n';
    s << "minor_calls: " << r.minor_calls << "  minor_budget_hits: " << r.minor_budget_hits << '\n';
    for (const auto& p : r.phases)
        s << "phase i=" << p.i << ": iterations=" << p.iterations << " findpath_calls=" << p.findpath_calls
          << " successes=" << p.findpath_successes << " walks=" << p.walks << " complete_grids=" << p.complete_grids
          << " assembled=" << p.assembled << " bad=" << p.bad_events.type1 << '/' << p.bad_events.type2 << '/'
          << p.bad_events.type3 << '\n';
    s << "bad_events: type1=" << r.bad_events.type1 << " type2=" << r.bad_events.type2
      << " type3=" << r.bad_events.type3 << '\n';
    return s.str();
}

std::string report_csv_header() {
    return "n,seed,outcome,provenance,phase,neighbor_queries,vertex_samples,induced_subgraph_queries,repeats,"
           "local_search_walks,largest_local_set,findpath_calls,findpath_successes,complete_grids,assembled,"
           "bad_type1,bad_type2,bad_type3,minor_calls,minor_budget_hits";
}

std::string report_csv_row(const TesterReport& r, const TesterConfig& cfg) {
    std::uint64_t calls = 0, succ = 0, grids = 0, assembled = 0;
    for (const auto& p : r.phases) {
        calls += p.findpath_calls;
        succ += p.findpath_successes;
        grids += p.complete_grids;
        assembled += p.assembled;
    }
    std::ostringstream s;
    s << cfg.n << ',' << cfg.seed << ',' << to_string(r.outcome) << ',' << to_string(r.provenance) << ','
      << r.biclique_phase << ',' << r.queries.neighbor_queries << ',' << r.queries.vertex_samples << ','
      << r.queries.induced_subgraph_queries << ',' << r.repeats << ',' << r.local_search_walks << ','
      << r.largest_local_set << ',' << calls << ',' << succ << ',' << grids << ',' << assembled << ','
      << r.bad_events.type1 << ',' << r.bad_events.type2 << ',' << r.bad_events.type3 << ',' << r.minor_calls << ','
      << r.minor_budget_hits;
    return s.str();
}

}  // namespace hminor
