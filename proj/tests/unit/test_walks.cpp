#include <algorithm>
#include <cmath>
#include <map>

#include <doctest.h>

#include "hminor/generators.hpp"
#include "hminor/walks.hpp"

using namespace hminor;

namespace {

Graph random_graph(std::size_t n, std::size_t d, double p, std::uint64_t seed) {
    RandomStream rng(seed);
    std::vector<std::size_t> deg(n, 0);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.uniform() < p && deg[u] < d && deg[v] < d) {
                edges.push_back({u, v});
                ++deg[u];
                ++deg[v];
            }
    return Graph::from_edges(n, d, edges);
}

Graph edges_graph(std::size_t n, std::size_t d, std::vector<Edge> e) { return Graph::from_edges(n, d, e); }

// Oracle: one lazy step as a sparse map, written without the kernels.
std::map<Vertex, double> step_oracle(const Graph& g, const std::map<Vertex, double>& x) {
    std::map<Vertex, double> y;
    const double d = static_cast<double>(std::max<std::size_t>(g.degree_bound(), 1));
    for (auto [v, p] : x) {
        auto nb = g.neighbors(v);
        y[v] += p * (0.5 + 0.5 * (d - static_cast<double>(nb.size())) / d);
        for (Vertex w : nb) y[w] += p * 0.5 / d;
    }
    return y;
}

std::vector<double> dist_oracle(const Graph& g, Vertex s, std::size_t t, const std::vector<Vertex>* R = nullptr,
                                std::size_t ell = 1) {
    std::map<Vertex, double> x{{s, 1.0}};
    for (std::size_t k = 1; k <= t; ++k) {
        x = step_oracle(g, x);
        if (R && k % ell == 0)
            for (auto it = x.begin(); it != x.end();)
                it = std::binary_search(R->begin(), R->end(), it->first) ? std::next(it) : x.erase(it);
    }
    std::vector<double> out(g.num_vertices(), 0.0);
    for (auto [v, p] : x) out[v] = p;
    return out;
}

std::vector<Vertex> random_subset(std::size_t n, std::size_t k, RandomStream& rng, std::optional<Vertex> must = {}) {
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    for (std::size_t i = 0; i + 1 < n; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
    std::vector<Vertex> out(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    if (must && std::find(out.begin(), out.end(), *must) == out.end()) out.back() = *must;
    std::sort(out.begin(), out.end());
    return out;
}

double four_sigma(double p, double trials) { return 4.0 * std::sqrt(std::max(p * (1 - p), 1e-12) / trials); }

}  // namespace

TEST_CASE("lazy step on a two-vertex path") {
    // With d = 1 the only slot is occupied, so the walk moves with probability 1/2.
    const DistVec d1 = walk_distribution(edges_graph(2, 1, {{0, 1}}), 0, 1);
    CHECK(d1.at(0) == 0.5);
    CHECK(d1.at(1) == 0.5);
    const Graph k2 = edges_graph(2, 2, {{0, 1}});
    const DistVec one = walk_distribution(k2, 0, 1);
    CHECK(one.at(0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(one.at(1) == doctest::Approx(0.25).epsilon(1e-15));
    QueryLedger ledger;
    RandomStream rng(4);
    const int trials = 100000;
    int moved = 0;
    for (int k = 0; k < trials; ++k) moved += lazy_step(k2, 0, rng, ledger) == 1;
    CHECK(std::abs(moved / double(trials) - 0.25) <= four_sigma(0.25, trials));
    CHECK(std::abs(double(ledger.snapshot().neighbor_queries) - trials / 2.0) <= 4 * std::sqrt(trials * 0.25));

    const Graph iso = Graph::from_edges(1, 3, {});
    for (int k = 0; k < 20; ++k) CHECK(lazy_step(iso, 0, rng, ledger) == 0);
}

TEST_CASE("one-step operator preserves the uniform distribution on regular graphs") {
    const Graph g = random_regular(30, 4, 5);
    const LazyOperator op(g);
    std::vector<double> x(30, 1.0 / 30), y(30);
    op.apply(x, y);
    for (double v : y) CHECK(v == doctest::Approx(1.0 / 30).epsilon(1e-14));
}

TEST_CASE("walk distributions match the enumeration oracle") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const Graph g = random_graph(12, 3, 0.3, seed);
        for (std::size_t t : {0u, 1u, 2u, 5u, 9u}) {
            const DistVec p = walk_distribution(g, 0, t);
            const auto q = dist_oracle(g, 0, t);
            double mass = 0;
            for (Vertex v = 0; v < 12; ++v) {
                CHECK(p.at(v) == doctest::Approx(q[v]).epsilon(1e-12));
                CHECK(p.at(v) >= 0);
                mass += p.at(v);
            }
            CHECK(std::abs(mass - 1) <= 1e-12);
            CHECK(std::abs(p.mass() - 1) <= 1e-12);
        }
    }
    const DistVec z = walk_distribution(grid(3, 3), 4, 0);
    CHECK(z.at(4) == 1.0);
    CHECK(z.mass() == 1.0);
}

TEST_CASE("sampled walks") {
    const Graph g = edges_graph(5, 3, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {1, 3}});
    QueryLedger ledger;
    RandomStream rng(1);
    CHECK(lazy_walk(g, 2, 0, rng, ledger).vertices == std::vector<Vertex>{2});

    const std::size_t t = 6;
    const int trials = 100000;
    std::vector<int> hits(5, 0);
    for (int k = 0; k < trials; ++k) {
        RandomStream s = derive_stream(77, {static_cast<std::uint64_t>(k)});
        WalkPath w = lazy_walk(g, 0, t, s, ledger);
        REQUIRE(w.length() == t);
        for (std::size_t j = 1; j <= t; ++j) CHECK((w.at(j) == w.at(j - 1) || g.has_edge(w.at(j), w.at(j - 1))));
        ++hits[w.end()];
    }
    const DistVec exact = walk_distribution(g, 0, t);
    for (Vertex v = 0; v < 5; ++v) CHECK(std::abs(hits[v] / double(trials) - exact.at(v)) <= four_sigma(exact.at(v), trials));

    RandomStream a(9), b(9), c(9);
    QueryLedger la, lb;
    const WalkPath wa = lazy_walk(g, 0, 40, a, la);
    CHECK(wa.vertices == lazy_walk(g, 0, 40, b, lb).vertices);
    CHECK(la.snapshot() == lb.snapshot());
    CHECK(lazy_walk_endpoint(g, 0, 40, c, lb) == wa.end());

    // Recount: a step queries the oracle exactly when the top bit of its draw is clear.
    RandomStream replay(9);
    std::uint64_t expected = 0;
    for (int k = 0; k < 40; ++k) expected += (replay() >> 63) == 0;
    CHECK(la.snapshot().neighbor_queries == expected);
}

TEST_CASE("returning vectors") {
    const Graph c4 = edges_graph(4, 2, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    const std::vector<Vertex> R{0, 2};
    const ReturningVec q = returning_vector(c4, R, 0, 0, 1);
    // One lazy step from 0 ends in {0, 2} only by staying.
    CHECK(q.at(0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q.at(2) == 0.0);
    CHECK(q.at(1) == 0.0);
    CHECK_THROWS_AS(returning_vector(c4, R, 1, 0, 1), UsageError);

    const Graph one = Graph::from_edges(1, 2, {});
    const std::vector<Vertex> v0{0};
    CHECK(returning_vector(one, v0, 0, 3, 2).values == std::vector<double>{1.0});

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Graph g = random_graph(14, 4, 0.3, seed);
        RandomStream rng(seed);
        const auto all = random_subset(14, 14, rng);
        for (int i = 0; i <= 2; ++i) {
            const std::size_t ell = 1 + seed % 3;
            const ReturningVec full = returning_vector(g, all, 3, i, ell);
            const DistVec p = walk_distribution(g, 3, ell << i);
            for (Vertex v = 0; v < 14; ++v) CHECK(full.at(v) == doctest::Approx(p.at(v)).epsilon(1e-12));
            const auto sub = random_subset(14, 6, rng, Vertex{3});
            const ReturningVec r = returning_vector(g, sub, 3, i, ell);
            const auto oracle = dist_oracle(g, 3, ell << i, &sub, ell);
            for (Vertex v = 0; v < 14; ++v) CHECK(r.at(v) == doctest::Approx(oracle[v]).epsilon(1e-12));
            CHECK(r.l1() <= 1 + 1e-12);
            for (double x : r.values) CHECK(x >= 0);
            // Symmetry of returning walks.
            for (Vertex u : sub) CHECK(returning_vector(g, sub, u, i, ell).at(3) == doctest::Approx(r.at(u)).epsilon(1e-12));
        }
    }
}

TEST_CASE("product identity of returning vectors") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RandomStream rng(seed * 31);
        const std::size_t n = 6 + rng.below(20);
        const Graph g = random_graph(n, 3 + rng.below(3), 0.25, seed);
        const LazyOperator op(g);
        const auto R = random_subset(n, 1 + rng.below(n), rng);
        const Vertex s = R[rng.below(R.size())], u = R[rng.below(R.size())];
        const int i = static_cast<int>(rng.below(2));
        const std::size_t ell = 1 + rng.below(3);
        const ProductIdentity id = returning_product_identity(op, R, s, u, i, ell);
        CHECK(std::abs(id.lhs - id.rhs) <= 1e-10);
        const ProductIdentity self = returning_product_identity(op, R, s, s, i, ell);
        CHECK(self.rhs == doctest::Approx(returning_vector(op, R, s, i, ell).l2_squared()).epsilon(1e-13));
    }
    // R = V, i = 0: p_{s,2l}(u) = <p_{s,l}, p_{u,l}>.
    const Graph g = random_regular(10, 3, 2);
    const LazyOperator op(g);
    std::vector<Vertex> all(10);
    for (Vertex v = 0; v < 10; ++v) all[v] = v;
    const ProductIdentity id = returning_product_identity(op, all, 1, 7, 0, 2);
    CHECK(id.lhs == doctest::Approx(walk_distribution(g, 1, 4).at(7)).epsilon(1e-13));
}

TEST_CASE("average returning mass is bounded below") {
    const Graph c6 = minor_free_family(MinorFreeKind::cycle, 6);
    std::vector<Vertex> all{0, 1, 2, 3, 4, 5}, five{0, 1, 2, 3, 4};
    const MassBound full = returning_mass_lower_bound(LazyOperator(c6), all, 2, 1);
    CHECK(full.average == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(full.bound == 1.0);
    const MassBound m = returning_mass_lower_bound(LazyOperator(c6), five, 1, 2);
    CHECK(m.bound == doctest::Approx(std::pow(5.0 / 6.0, 2)).epsilon(1e-15));
    CHECK(m.average >= m.bound - 1e-12);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        RandomStream rng(seed);
        const std::size_t n = 5 + rng.below(36);
        const Graph g = random_graph(n, 4, 0.2, seed + 100);
        const auto R = random_subset(n, 1 + rng.below(n), rng);
        const MassBound b = returning_mass_lower_bound(LazyOperator(g), R, static_cast<int>(rng.below(4)), 1 + rng.below(2));
        CHECK(b.average >= b.bound - 1e-12);
    }
    CHECK_THROWS_AS(returning_mass_lower_bound(LazyOperator(c6), std::vector<Vertex>{}, 0, 1), UsageError);
}

TEST_CASE("sampled returning walks") {
    const Graph g = random_graph(10, 3, 0.35, 3);
    std::vector<Vertex> all(10);
    for (Vertex v = 0; v < 10; ++v) all[v] = v;
    QueryLedger ledger;
    RandomStream rng(5);
    for (int k = 0; k < 50; ++k) CHECK(returning_walk_sample(g, all, 0, 2, 2, rng, ledger).returning);

    const std::vector<Vertex> R{0, 2, 3, 5, 7};
    const double exact = returning_vector(g, R, 0, 1, 2).l1();
    const int trials = 40000;
    int ret = 0;
    for (int k = 0; k < trials; ++k) ret += returning_walk_sample(g, R, 0, 1, 2, rng, ledger).returning;
    CHECK(std::abs(ret / double(trials) - exact) <= four_sigma(exact, trials));

    const Graph lonely = Graph::from_edges(3, 2, std::vector<Edge>{{1, 2}});
    const std::vector<Vertex> only{0};
    const ReturningSample s = returning_walk_sample(lonely, only, 0, 2, 3, rng, ledger);
    CHECK(s.returning);
    CHECK(std::all_of(s.walk.vertices.begin(), s.walk.vertices.end(), [](Vertex v) { return v == 0; }));
}

TEST_CASE("restricted evolution never raises the maximum") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Graph g = random_graph(20, 4, 0.25, seed);
        const LazyOperator op(g);
        RandomStream rng(seed);
        const auto R = random_subset(20, 8, rng);
        std::vector<double> mask(20, 0.0), x(20, 0.0);
        for (Vertex v : R) {
            mask[v] = 1.0;
            x[v] = rng.uniform();
        }
        const double start = *std::max_element(x.begin(), x.end());
        for (int t = 1; t <= 6; ++t) {
            op.apply_power(x, 1);
            op.table().mask_multiply(x.data(), mask.data(), 20);
            CHECK(*std::max_element(x.begin(), x.end()) <= start + 1e-15);
        }
    }
}

TEST_CASE("projected chains") {
    const Graph g = random_graph(8, 3, 0.4, 2);
    std::vector<Vertex> all(8);
    for (Vertex v = 0; v < 8; ++v) all[v] = v;
    const ProjectedChain full = build_projected_chain(g, all, 5);
    const DistVec one = walk_distribution(g, 2, 1);
    for (const auto& e : full.entries[2]) CHECK(e.length == 1);
    for (std::size_t b = 0; b < 8; ++b) CHECK(full.transition(2, b) == doctest::Approx(one.at(static_cast<Vertex>(b))).epsilon(1e-14));
    CHECK(full.max_residual() == 0.0);

    const Graph p3 = edges_graph(3, 2, {{0, 1}, {1, 2}});
    const ProjectedChain c = build_projected_chain(p3, std::vector<Vertex>{0, 2}, 40);
    double two = 0;
    for (const auto& e : c.entries[0])
        if (e.target == 1 && e.length == 2) two += e.probability;
    CHECK(two == doctest::Approx(1.0 / 16).epsilon(1e-15));

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Graph h = random_graph(15, 4, 0.3, seed + 40);
        RandomStream rng(seed);
        const auto S = random_subset(15, 5 + rng.below(10), rng);
        const ProjectedChain ch = build_projected_chain(h, S, 30);
        for (std::size_t a = 0; a < ch.size(); ++a) {
            double total = ch.residual[a];
            for (const auto& e : ch.entries[a]) total += e.probability;
            CHECK(std::abs(total - 1) <= 1e-9);
            for (std::size_t b = 0; b < ch.size(); ++b) CHECK(ch.transition(a, b) == doctest::Approx(ch.transition(b, a)).epsilon(1e-12));
        }
        std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, double> e;
        for (std::size_t a = 0; a < ch.size(); ++a)
            for (const auto& x : ch.entries[a]) e[{static_cast<std::uint32_t>(a), x.target, x.length}] += x.probability;
        for (auto [k, p] : e) {
            auto [a, b, t] = k;
            CHECK(e[{b, a, t}] == doctest::Approx(p).epsilon(1e-12));
        }
    }
}

TEST_CASE("Kac return times") {
    const Graph c6 = minor_free_family(MinorFreeKind::cycle, 6);
    std::vector<Vertex> all{0, 1, 2, 3, 4, 5};
    const KacReport k0 = kac_check(build_projected_chain(c6, all, 4), 3);
    CHECK(k0.pass);
    CHECK(k0.expected_length == doctest::Approx(3.0).epsilon(1e-14));

    const ProjectedChain alt = build_projected_chain_until(c6, std::vector<Vertex>{0, 2, 4}, 1e-9, 1 << 14);
    const KacReport k1 = kac_check(alt, 1);
    CHECK(k1.pass);
    CHECK(k1.target == 2.0);
    CHECK(std::abs(k1.expected_length - 2.0) <= 1e-6);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Graph g = random_graph(20, 4, 0.3, seed + 7);
        RandomStream rng(seed);
        const auto S = random_subset(20, 7 + rng.below(13), rng);
        // The tail beyond t_max carries about t_max * residual of length, so go well below 1e-6.
        const ProjectedChain ch = build_projected_chain_until(g, S, 1e-11, 1 << 16);
        const KacReport k = kac_check(ch, 2);
        if (k.inconclusive) continue;
        CHECK(std::abs(k.expected_length - 2.0 * 20 / double(S.size())) <= 2 * 20 * ch.max_residual() + 1e-6);
    }
}

TEST_CASE("Lovasz-Simonovits curves") {
    const Graph g = random_graph(12, 4, 0.35, 9);
    std::vector<Vertex> all(12);
    for (Vertex v = 0; v < 12; ++v) all[v] = v;
    const ProjectedChain chain = build_projected_chain(g, all, 1);
    const LSCurve c0 = ls_curve(chain, 3, 0);
    CHECK(c0.values[0] == 0.0);
    CHECK(c0.values[1] == doctest::Approx(1 - 1.0 / 12).epsilon(1e-15));
    CHECK(c0.order.front() == 3);

    const std::vector<double> flat(12, 1.0 / 12);
    const LSCurve u = ls_curve(all, flat);
    for (double v : u.values) CHECK(std::abs(v) <= 1e-15);

    for (std::size_t t = 1; t <= 5; ++t) {
        const LSCurve c = ls_curve(chain, 3, t);
        const auto p = hop_distribution(chain, 3, t);
        std::vector<double> sorted(p);
        std::sort(sorted.rbegin(), sorted.rend());
        double acc = 0;
        CHECK(c.values[0] == 0.0);
        for (std::size_t k = 1; k <= 12; ++k) {
            acc += sorted[k - 1] - 1.0 / 12;
            CHECK(c.values[k] == doctest::Approx(acc).epsilon(1e-12));
            if (k >= 2) CHECK(c.slope(k) <= c.slope(k - 1));
        }
        CHECK(c.at(2.5) == doctest::Approx((c.values[2] + c.values[3]) / 2).epsilon(1e-14));
    }

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        RandomStream rng(seed);
        const std::size_t n = 5 + rng.below(21);
        const Graph h = random_graph(n, 4, 0.3, seed + 3);
        std::vector<Vertex> vs(n);
        for (Vertex v = 0; v < n; ++v) vs[v] = v;
        const ProjectedChain ch = build_projected_chain(h, vs, 1);
        const Vertex s = static_cast<Vertex>(rng.below(n));
        for (std::size_t t = 1; t <= 5; ++t)
            for (std::size_t k = 0; k <= n; ++k) CHECK(ls_lemma_check(ch, s, t, k).slack >= -1e-9);
    }

    const ProjectedChain k5 = build_projected_chain(random_regular(5, 4, 1), std::vector<Vertex>{0, 1, 2, 3, 4}, 1);
    for (std::size_t k = 1; k <= 4; ++k) CHECK(ls_lemma_check(k5, 0, 1, k).slack > 0);
}
