#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "hminor/rng.hpp"
#include "minor_internal.hpp"

namespace hminor {

namespace detail {

std::optional<MinorEmbedding> embedding_from_classes(const Graph& g, const Graph& h,
                                                     const std::vector<std::vector<Vertex>>& classes,
                                                     const std::vector<Vertex>& phi) {
    const std::size_t r = h.num_vertices();
    constexpr std::uint32_t none = ~std::uint32_t{0};
    std::vector<std::uint32_t> owner(g.num_vertices(), none);
    MinorEmbedding emb;
    emb.branch_sets.resize(r);
    for (Vertex x = 0; x < r; ++x) {
        emb.branch_sets[x] = classes[phi[x]];
        std::sort(emb.branch_sets[x].begin(), emb.branch_sets[x].end());
        for (Vertex v : emb.branch_sets[x]) owner[v] = x;
    }
    for (const Edge& e : h.edges()) {
        bool found = false;
        for (Vertex a : emb.branch_sets[e.u]) {
            for (Vertex b : g.neighbors(a))
                if (owner[b] == e.v) {
                    emb.witnesses.push_back({e.u, e.v, a, b});
                    found = true;
                    break;
                }
            if (found) break;
        }
        if (!found) return std::nullopt;
    }
    return emb;
}

}  // namespace detail

namespace {

using detail::Budget;
using detail::BudgetExhausted;

// ---------------------------------------------------------------- subgraph isomorphism

class SubgraphMatcher {
public:
    SubgraphMatcher(const Graph& q, const Graph& h) : q_(q), h_(h), map_(h.num_vertices()), used_(q.num_vertices(), 0) {
        const std::size_t r = h.num_vertices();
        std::vector<char> placed(r, 0);
        std::vector<std::size_t> earlier(r, 0);
        for (std::size_t k = 0; k < r; ++k) {
            Vertex best = 0;
            bool have = false;
            for (Vertex x = 0; x < r; ++x) {
                if (placed[x]) continue;
                auto score = std::make_tuple(earlier[x], h.degree(x));
                if (!have || score > std::make_tuple(earlier[best], h.degree(best))) {
                    best = x;
                    have = true;
                }
            }
            placed[best] = 1;
            order_.push_back(best);
            for (Vertex y : h.neighbors(best)) ++earlier[y];
        }
        std::vector<std::size_t> pos(r);
        for (std::size_t k = 0; k < r; ++k) pos[order_[k]] = k;
        back_.resize(r);
        for (std::size_t k = 0; k < r; ++k)
            for (Vertex y : h.neighbors(order_[k]))
                if (pos[y] < k) back_[k].push_back(y);
    }

    std::optional<std::vector<Vertex>> run() {
        if (h_.num_vertices() > q_.num_vertices()) return std::nullopt;
        if (!extend(0)) return std::nullopt;
        return map_;
    }

private:
    bool extend(std::size_t k) {
        if (k == order_.size()) return true;
        const Vertex x = order_[k];
        auto try_vertex = [&](Vertex c) {
            if (used_[c] || q_.degree(c) < h_.degree(x)) return false;
            for (Vertex y : back_[k])
                if (!q_.has_edge(c, map_[y])) return false;
            map_[x] = c;
            used_[c] = 1;
            if (extend(k + 1)) return true;
            used_[c] = 0;
            return false;
        };
        if (!back_[k].empty()) {
            for (Vertex c : q_.neighbors(map_[back_[k].front()]))
                if (try_vertex(c)) return true;
            return false;
        }
        for (Vertex c = 0; c < q_.num_vertices(); ++c)
            if (try_vertex(c)) return true;
        return false;
    }

    const Graph& q_;
    const Graph& h_;
    std::vector<Vertex> order_;
    std::vector<std::vector<Vertex>> back_;
    std::vector<Vertex> map_;
    std::vector<char> used_;
};

std::size_t min_degree(const Graph& h) {
    std::size_t m = h.num_vertices() ? h.degree(0) : 0;
    for (Vertex x = 0; x < h.num_vertices(); ++x) m = std::min(m, h.degree(x));
    return m;
}

// ---------------------------------------------------------------- branch and bound

class BranchAndBound {
public:
    BranchAndBound(const Graph& g, const Graph& h, Budget& budget)
        : g_(g), h_(h), budget_(budget), n_(g.num_vertices()), r_(h.num_vertices()) {
        if (r_ > 64) throw UsageError("pattern graphs are limited to 64 vertices");
        order_pattern();
        rank_.resize(n_);
        std::vector<Vertex> by_rank(n_);
        std::iota(by_rank.begin(), by_rank.end(), Vertex{0});
        std::stable_sort(by_rank.begin(), by_rank.end(),
                         [&](Vertex a, Vertex b) { return g_.degree(a) > g_.degree(b); });
        for (std::size_t k = 0; k < n_; ++k) rank_[by_rank[k]] = k;
        owner_.assign(n_, -1);
        in_set_.assign(n_, 0);
        excluded_.assign(r_, std::vector<char>(n_, 0));
        in_frontier_.assign(r_, std::vector<char>(n_, 0));
        stamp_.assign(n_, 0);
        sets_.resize(r_);
        root_rank_.assign(r_, 0);
        free_ = n_;
    }

    std::optional<MinorEmbedding> run() {
        if (r_ == 0) return MinorEmbedding{};
        if (r_ > n_) return std::nullopt;
        if (!place(0)) return std::nullopt;
        MinorEmbedding emb;
        emb.branch_sets.resize(r_);
        for (std::size_t j = 0; j < r_; ++j) {
            emb.branch_sets[order_[j]] = sets_[j];
            std::sort(emb.branch_sets[order_[j]].begin(), emb.branch_sets[order_[j]].end());
        }
        std::vector<Vertex> identity(r_);
        std::iota(identity.begin(), identity.end(), Vertex{0});
        return detail::embedding_from_classes(g_, h_, emb.branch_sets, identity);
    }

private:
    void order_pattern() {
        std::vector<char> placed(r_, 0);
        std::vector<std::size_t> earlier(r_, 0);
        for (std::size_t k = 0; k < r_; ++k) {
            int best = -1;
            auto score = [&](Vertex x) {
                return std::make_tuple(earlier[x] > 0, h_.degree(x), earlier[x]);
            };
            for (Vertex x = 0; x < r_; ++x)
                if (!placed[x] && (best < 0 || score(x) > score(static_cast<Vertex>(best)))) best = static_cast<int>(x);
            placed[static_cast<std::size_t>(best)] = 1;
            order_.push_back(static_cast<Vertex>(best));
            for (Vertex y : h_.neighbors(static_cast<Vertex>(best))) ++earlier[y];
        }
        std::vector<std::size_t> pos(r_);
        for (std::size_t k = 0; k < r_; ++k) pos[order_[k]] = k;
        need_.assign(r_, 0);
        later_count_.assign(r_, 0);
        anchor_.assign(r_, -1);
        for (std::size_t k = 0; k < r_; ++k)
            for (Vertex y : h_.neighbors(order_[k])) {
                if (pos[y] < k) {
                    need_[k] |= std::uint64_t{1} << pos[y];
                    if (anchor_[k] < 0 || pos[y] < static_cast<std::size_t>(anchor_[k])) anchor_[k] = static_cast<int>(pos[y]);
                } else {
                    ++later_count_[k];
                }
            }
        // Twins: N(x) \ {y} == N(y) \ {x}.
        auto twins = [&](Vertex x, Vertex y) {
            std::vector<Vertex> a, b;
            for (Vertex z : h_.neighbors(x))
                if (z != y) a.push_back(z);
            for (Vertex z : h_.neighbors(y))
                if (z != x) b.push_back(z);
            return a == b;
        };
        twin_prev_.assign(r_, -1);
        std::vector<char> in_twin(r_, 0);
        for (std::size_t q = 1; q + 1 < r_; ++q)
            for (std::size_t p = q; p-- > 0;)
                if (anchor_[p] == anchor_[q] && twins(order_[p], order_[q])) {
                    twin_prev_[q] = static_cast<int>(p);
                    in_twin[p] = in_twin[q] = 1;
                    break;
                }
        minimal_.assign(r_, 0);
        for (std::size_t k = 0; k < r_; ++k) minimal_[k] = later_count_[k] == 0 && !in_twin[k];
        // Components of H restricted to positions > j, with their needs on positions <= j.
        later_groups_.resize(r_);
        for (std::size_t j = 0; j < r_; ++j) {
            std::vector<int> comp(r_, -1);
            for (std::size_t s = j + 1; s < r_; ++s) {
                if (comp[s] >= 0) continue;
                std::uint64_t need = 0;
                std::size_t size = 0;
                std::vector<std::size_t> stack{s};
                comp[s] = static_cast<int>(s);
                while (!stack.empty()) {
                    std::size_t k = stack.back();
                    stack.pop_back();
                    ++size;
                    for (Vertex y : h_.neighbors(order_[k])) {
                        std::size_t py = pos[y];
                        if (py <= j) {
                            need |= std::uint64_t{1} << py;
                        } else if (comp[py] < 0) {
                            comp[py] = static_cast<int>(s);
                            stack.push_back(py);
                        }
                    }
                }
                later_groups_[j].push_back({need, size});
            }
        }
    }

    std::uint64_t touch_mask(Vertex v) const {
        std::uint64_t m = 0;
        for (Vertex w : g_.neighbors(v))
            if (owner_[w] >= 0) m |= std::uint64_t{1} << owner_[w];
        return m;
    }

    bool is_free(Vertex v) const { return owner_[v] < 0; }

    struct FreeComponents {
        std::vector<std::uint64_t> touch;
        std::vector<std::size_t> size;
    };

    // Components of the free vertices; labels are written to comp_.
    FreeComponents free_components() {
        FreeComponents fc;
        comp_.assign(n_, -1);
        std::vector<Vertex> stack;
        for (Vertex s = 0; s < n_; ++s) {
            if (!is_free(s) || comp_[s] >= 0) continue;
            const int id = static_cast<int>(fc.size.size());
            fc.touch.push_back(0);
            fc.size.push_back(0);
            comp_[s] = id;
            stack.push_back(s);
            while (!stack.empty()) {
                Vertex v = stack.back();
                stack.pop_back();
                ++fc.size[static_cast<std::size_t>(id)];
                for (Vertex w : g_.neighbors(v)) {
                    if (owner_[w] >= 0) {
                        fc.touch[static_cast<std::size_t>(id)] |= std::uint64_t{1} << owner_[w];
                    } else if (comp_[w] < 0) {
                        comp_[w] = id;
                        stack.push_back(w);
                    }
                }
            }
        }
        return fc;
    }

    bool feasible(std::size_t j) {
        if (free_ < r_ - j - 1) return false;
        if (j + 1 >= r_) return true;
        FreeComponents fc = free_components();
        for (const auto& [need, size] : later_groups_[j]) {
            bool ok = false;
            for (std::size_t c = 0; c < fc.size.size() && !ok; ++c)
                ok = (fc.touch[c] & need) == need && fc.size[c] >= size;
            if (!ok) return false;
        }
        return true;
    }

    bool place_last(std::size_t j) {
        budget_.tick();
        FreeComponents fc = free_components();
        for (std::size_t c = 0; c < fc.size.size(); ++c) {
            if ((fc.touch[c] & need_[j]) != need_[j]) continue;
            sets_[j].clear();
            for (Vertex v = 0; v < n_; ++v)
                if (comp_[v] == static_cast<int>(c)) sets_[j].push_back(v);
            for (Vertex v : sets_[j]) owner_[v] = static_cast<int>(j);
            return true;
        }
        return false;
    }

    bool accept(std::size_t j, const std::vector<Vertex>& set) {
        if (later_count_[j] > 0) {
            ++epoch_;
            std::size_t count = 0;
            for (Vertex v : set)
                for (Vertex w : g_.neighbors(v))
                    if (is_free(w) && !in_set_[w] && stamp_[w] != epoch_) {
                        stamp_[w] = epoch_;
                        ++count;
                    }
            if (count < later_count_[j]) return false;
        }
        for (Vertex v : set) owner_[v] = static_cast<int>(j);
        free_ -= set.size();
        sets_[j] = set;
        if (feasible(j) && place(j + 1)) return true;
        for (Vertex v : set) owner_[v] = -1;
        free_ += set.size();
        return false;
    }

    bool grow(std::size_t j, std::vector<Vertex>& set, const std::vector<Vertex>& frontier, std::uint64_t touched,
              std::size_t cap) {
        budget_.tick();
        if ((touched & need_[j]) == need_[j]) {
            if (accept(j, set)) return true;
            if (minimal_[j]) return false;
        }
        if (set.size() >= cap) return false;
        auto& excl = excluded_[j];
        auto& infr = in_frontier_[j];
        std::vector<Vertex> excluded_here;
        bool found = false;
        for (std::size_t idx = 0; idx < frontier.size() && !found; ++idx) {
            const Vertex w = frontier[idx];
            std::vector<Vertex> next(frontier.begin() + static_cast<std::ptrdiff_t>(idx) + 1, frontier.end());
            std::vector<Vertex> fresh;
            for (Vertex x : g_.neighbors(w))
                if (is_free(x) && !in_set_[x] && !excl[x] && !infr[x]) {
                    infr[x] = 1;
                    fresh.push_back(x);
                    next.push_back(x);
                }
            set.push_back(w);
            in_set_[w] = 1;
            found = grow(j, set, next, touched | touch_mask(w), cap);
            if (found) break;
            set.pop_back();
            in_set_[w] = 0;
            for (Vertex x : fresh) infr[x] = 0;
            excl[w] = 1;
            excluded_here.push_back(w);
        }
        for (Vertex w : excluded_here) excl[w] = 0;
        return found;
    }

    bool place(std::size_t j) {
        if (j == r_) return true;
        budget_.tick();
        if (j + 1 == r_) return place_last(j);
        std::vector<Vertex> roots;
        if (anchor_[j] < 0) {
            for (Vertex v = 0; v < n_; ++v)
                if (is_free(v)) roots.push_back(v);
        } else {
            ++epoch_;
            for (Vertex v : sets_[static_cast<std::size_t>(anchor_[j])])
                for (Vertex w : g_.neighbors(v))
                    if (is_free(w) && stamp_[w] != epoch_) {
                        stamp_[w] = epoch_;
                        roots.push_back(w);
                    }
        }
        std::sort(roots.begin(), roots.end(), [&](Vertex a, Vertex b) { return rank_[a] < rank_[b]; });
        auto& excl = excluded_[j];
        auto& infr = in_frontier_[j];
        std::vector<Vertex> blocked;
        bool found = false;
        const std::size_t cap = free_ - (r_ - j - 1);
        for (Vertex root : roots) {
            if (free_ - blocked.size() < r_ - j) break;
            const bool twin_ok = twin_prev_[j] < 0 || rank_[root] > root_rank_[static_cast<std::size_t>(twin_prev_[j])];
            if (twin_ok) {
                std::vector<Vertex> set{root};
                in_set_[root] = 1;
                std::vector<Vertex> frontier;
                for (Vertex x : g_.neighbors(root))
                    if (is_free(x) && !excl[x] && !infr[x] && x != root) {
                        infr[x] = 1;
                        frontier.push_back(x);
                    }
                root_rank_[j] = rank_[root];
                found = grow(j, set, frontier, touch_mask(root), cap);
                if (found) break;
                in_set_[root] = 0;
                for (Vertex x : frontier) infr[x] = 0;
            }
            excl[root] = 1;
            blocked.push_back(root);
        }
        for (Vertex v : blocked) excl[v] = 0;
        return found;
    }

    const Graph& g_;
    const Graph& h_;
    Budget& budget_;
    std::size_t n_;
    std::size_t r_;
    std::vector<Vertex> order_;
    std::vector<std::uint64_t> need_;
    std::vector<std::size_t> later_count_;
    std::vector<int> anchor_;
    std::vector<int> twin_prev_;
    std::vector<char> minimal_;
    std::vector<std::vector<std::pair<std::uint64_t, std::size_t>>> later_groups_;
    std::vector<std::size_t> rank_;
    std::vector<int> owner_;
    std::vector<char> in_set_;
    std::vector<std::vector<char>> excluded_;
    std::vector<std::vector<char>> in_frontier_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_ = 0;
    std::vector<int> comp_;
    std::vector<std::vector<Vertex>> sets_;
    std::vector<std::size_t> root_rank_;
    std::size_t free_ = 0;
};

// ---------------------------------------------------------------- pipeline

struct Context {
    const Graph& h;
    const MinorSearchOptions& options;
    Budget& budget;
    std::size_t min_degree;
    int connectivity;
    bool h_planar;
};

struct Outcome {
    MinorStatus status = MinorStatus::absent;
    std::optional<MinorEmbedding> embedding;
};

Outcome solve(const Graph& g, Context& ctx);

// Solves every piece; the first model found is lifted into g.
Outcome solve_pieces(std::vector<detail::Piece> pieces, Context& ctx) {
    bool exceeded = false;
    for (auto& piece : pieces) {
        if (piece.graph.num_vertices() < ctx.h.num_vertices()) continue;
        Outcome sub = solve(piece.graph, ctx);
        if (sub.status == MinorStatus::found)
            return {MinorStatus::found, detail::lift_embedding(piece.lift, *sub.embedding)};
        exceeded = exceeded || sub.status == MinorStatus::budget_exceeded;
    }
    return {exceeded ? MinorStatus::budget_exceeded : MinorStatus::absent, std::nullopt};
}

Outcome solve(const Graph& g, Context& ctx) {
    const Graph& h = ctx.h;
    const auto& opt = ctx.options;
    const std::size_t r = h.num_vertices();
    if (g.num_vertices() < r || g.num_edges() < h.num_edges()) return {};
    ctx.budget.check_deadline();
    const bool structural = opt.reductions && ctx.connectivity >= 1 && r >= 2;
    if (structural) {
        std::size_t count = 0;
        auto label = connected_components(g, &count);
        if (count > 1) {
            std::vector<std::vector<Vertex>> groups(count);
            for (Vertex v = 0; v < g.num_vertices(); ++v) groups[label[v]].push_back(v);
            std::vector<detail::Piece> pieces;
            for (auto& grp : groups)
                if (grp.size() >= r) pieces.push_back(detail::induced_piece(g, std::move(grp)));
            return solve_pieces(std::move(pieces), ctx);
        }
        if (ctx.min_degree >= 2) {
            detail::Piece reduced = detail::reduce_low_degree(g, ctx.min_degree);
            if (reduced.graph.num_vertices() < g.num_vertices()) {
                std::vector<detail::Piece> pieces;
                pieces.push_back(std::move(reduced));
                return solve_pieces(std::move(pieces), ctx);
            }
        }
        if (ctx.connectivity >= 2) {
            auto bl = detail::blocks(g);
            if (bl.size() > 1) {
                std::vector<detail::Piece> pieces;
                for (auto& b : bl)
                    if (b.size() >= r) pieces.push_back(detail::induced_piece(g, std::move(b)));
                return solve_pieces(std::move(pieces), ctx);
            }
        }
    }
    const bool nonplanar_pattern = !ctx.h_planar;
    if (opt.planarity && nonplanar_pattern && is_planar(g)) return {};
    if (opt.heuristics) {
        if (nonplanar_pattern && r <= 6) {
            auto edges = kuratowski_edges(g);
            if (!edges.empty())
                if (auto emb = detail::subdivision_embedding(g, edges, h)) return {MinorStatus::found, std::move(emb)};
        }
        if (auto emb = contraction_heuristic(g, h, opt.heuristic_rounds, opt.seed))
            return {MinorStatus::found, std::move(emb)};
    }
    if (structural && ctx.connectivity >= 3 && g.num_vertices() <= 4096) {
        if (auto sep = detail::two_separator(g))
            return solve_pieces(detail::torsos(g, sep->first, sep->second), ctx);
    }
    BranchAndBound bb(g, h, ctx.budget);
    if (auto emb = bb.run()) return {MinorStatus::found, std::move(emb)};
    return {};
}

}  // namespace

std::optional<std::vector<Vertex>> find_subgraph(const Graph& q, const Graph& h) {
    return SubgraphMatcher(q, h).run();
}

std::optional<MinorEmbedding> contraction_heuristic(const Graph& g, const Graph& h, int rounds, std::uint64_t seed) {
    const std::size_t n = g.num_vertices(), r = h.num_vertices();
    if (r == 0 || n < r) return std::nullopt;
    const std::size_t hmin = min_degree(h);
    const std::size_t limit = 2 * r + 2;
    for (int round = 0; round < rounds; ++round) {
        RandomStream rng = derive_stream(seed, {static_cast<std::uint64_t>(round)});
        std::vector<std::set<Vertex>> nb(n);
        std::vector<std::vector<Vertex>> members(n);
        std::vector<std::uint64_t> tie(n);
        std::vector<char> alive(n, 1);
        using Entry = std::tuple<std::size_t, std::uint64_t, Vertex>;
        std::set<Entry> queue;
        for (Vertex v = 0; v < n; ++v) {
            nb[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
            members[v] = {v};
            tie[v] = rng();
            queue.insert({nb[v].size(), tie[v], v});
        }
        std::size_t count = n;
        auto reweigh = [&](Vertex v, std::size_t old_degree) {
            queue.erase({old_degree, tie[v], v});
            queue.insert({nb[v].size(), tie[v], v});
        };
        auto remove_class = [&](Vertex c) {
            queue.erase({nb[c].size(), tie[c], c});
            for (Vertex z : nb[c]) {
                std::size_t old = nb[z].size();
                nb[z].erase(c);
                reweigh(z, old);
            }
            nb[c].clear();
            alive[c] = 0;
            --count;
        };
        while (count >= r) {
            if (count <= limit) {
                std::vector<Vertex> ids;
                std::vector<Vertex> index(n, 0);
                for (Vertex v = 0; v < n; ++v)
                    if (alive[v]) {
                        index[v] = static_cast<Vertex>(ids.size());
                        ids.push_back(v);
                    }
                std::vector<std::vector<Vertex>> qadj(ids.size());
                for (std::size_t a = 0; a < ids.size(); ++a) {
                    for (Vertex z : nb[ids[a]]) qadj[a].push_back(index[z]);
                    std::sort(qadj[a].begin(), qadj[a].end());
                }
                Graph q = Graph::from_adjacency(ids.size(), ids.size(), qadj);
                if (auto phi = find_subgraph(q, h)) {
                    std::vector<std::vector<Vertex>> classes;
                    for (Vertex v : ids) classes.push_back(members[v]);
                    auto emb = detail::embedding_from_classes(g, h, classes, *phi);
                    if (emb && validate_embedding(g, h, *emb).empty()) return emb;
                }
                if (count == r) break;
            }
            const Vertex c = std::get<2>(*queue.begin());
            const std::size_t deg = nb[c].size();
            if (deg == 0 || (deg == 1 && hmin >= 2)) {
                remove_class(c);
                continue;
            }
            // Contract into the neighbour sharing the fewest neighbours.
            Vertex best = 0;
            std::size_t best_common = 0;
            std::uint64_t best_tie = 0;
            bool have = false;
            for (Vertex w : nb[c]) {
                std::size_t common = 0;
                const auto& small = nb[c].size() < nb[w].size() ? nb[c] : nb[w];
                const auto& large = nb[c].size() < nb[w].size() ? nb[w] : nb[c];
                for (Vertex z : small) common += large.count(z);
                std::uint64_t t = rng();
                if (!have || common < best_common || (common == best_common && t < best_tie)) {
                    best = w;
                    best_common = common;
                    best_tie = t;
                    have = true;
                }
            }
            const Vertex w = best;
            queue.erase({nb[c].size(), tie[c], c});
            const std::size_t w_old = nb[w].size();
            for (Vertex z : nb[c]) {
                if (z == w) continue;
                std::size_t old = nb[z].size();
                nb[z].erase(c);
                nb[z].insert(w);
                nb[w].insert(z);
                reweigh(z, old);
            }
            nb[w].erase(c);
            reweigh(w, w_old);
            members[w].insert(members[w].end(), members[c].begin(), members[c].end());
            members[c].clear();
            nb[c].clear();
            alive[c] = 0;
            --count;
        }
    }
    return std::nullopt;
}

MinorSearchResult branch_and_bound_minor(const Graph& g, const Graph& h, const MinorSearchOptions& options) {
    Budget budget(options.node_limit, options.deadline);
    MinorSearchResult result;
    try {
        BranchAndBound bb(g, h, budget);
        result.embedding = bb.run();
        result.status = result.embedding ? MinorStatus::found : MinorStatus::absent;
    } catch (const BudgetExhausted&) {
        result.status = MinorStatus::budget_exceeded;
    }
    result.nodes = budget.nodes();
    return result;
}

MinorSearchResult search_minor(const Graph& g, const Graph& h, const MinorSearchOptions& options) {
    Budget budget(options.node_limit, options.deadline);
    const int conn = detail::connectivity_capped(h);
    Context ctx{h, options, budget, min_degree(h), conn, is_planar(h)};
    MinorSearchResult result;
    try {
        Outcome out = solve(g, ctx);
        result.status = out.status;
        result.embedding = std::move(out.embedding);
    } catch (const BudgetExhausted&) {
        result.status = MinorStatus::budget_exceeded;
    }
    result.nodes = budget.nodes();
    if (result.embedding) {
        auto violations = validate_embedding(g, h, *result.embedding);
        if (!violations.empty())
            throw std::logic_error("minor search produced an invalid model: " + violations.front().message);
    }
    return result;
}

std::optional<MinorEmbedding> has_minor(const Graph& g, const Graph& h) {
    return search_minor(g, h).embedding;
}

std::optional<MinorEmbedding> forbidden_minor_certificate(const Graph& g) {
    if (is_planar(g)) return std::nullopt;
    const Graph k33 = complete_bipartite(3, 3), k5 = complete_graph(5);
    auto edges = kuratowski_edges(g);
    for (const Graph* pattern : {&k33, &k5})
        if (auto emb = detail::subdivision_embedding(g, edges, *pattern)) return emb;
    for (const Graph* pattern : {&k33, &k5})
        if (auto emb = has_minor(g, *pattern)) return emb;
    throw std::logic_error("non-planar graph without a Kuratowski minor");
}

Graph forbidden_pattern_of(const MinorEmbedding& emb) {
    return emb.branch_sets.size() == 6 ? complete_bipartite(3, 3) : complete_graph(5);
}

}  // namespace hminor
