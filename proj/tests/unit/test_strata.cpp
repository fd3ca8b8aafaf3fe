#include <algorithm>
#include <cmath>
#include <map>

#include <doctest.h>

#include "hminor/generators.hpp"
#include "hminor/minor.hpp"
#include "hminor/strata.hpp"

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

Graph cliques(std::size_t count, std::size_t size) {
    std::vector<Edge> e;
    for (std::size_t c = 0; c < count; ++c)
        for (std::size_t a = 0; a < size; ++a)
            for (std::size_t b = a + 1; b < size; ++b)
                e.push_back({static_cast<Vertex>(c * size + a), static_cast<Vertex>(c * size + b)});
    return Graph::from_edges(count * size, size - 1, e);
}

std::vector<Vertex> all_vertices(std::size_t n) {
    std::vector<Vertex> v(n);
    for (Vertex x = 0; x < n; ++x) v[x] = x;
    return v;
}

// Oracle: the R-returning walk vector computed from scratch with sparse maps.
std::map<Vertex, double> returning_oracle(const Graph& g, const std::vector<Vertex>& R, Vertex s, std::size_t steps,
                                          std::size_t ell) {
    const double d = static_cast<double>(std::max<std::size_t>(g.degree_bound(), 1));
    std::map<Vertex, double> x{{s, 1.0}};
    for (std::size_t k = 1; k <= steps; ++k) {
        std::map<Vertex, double> y;
        for (auto [v, p] : x) {
            auto nb = g.neighbors(v);
            y[v] += p * (1.0 - 0.5 * static_cast<double>(nb.size()) / d);
            for (Vertex w : nb) y[w] += p * 0.5 / d;
        }
        if (k % ell == 0)
            for (auto it = y.begin(); it != y.end();)
                it = std::binary_search(R.begin(), R.end(), it->first) ? std::next(it) : y.erase(it);
        x = std::move(y);
    }
    return x;
}

struct OraclePlacement {
    std::vector<int> level;
    std::vector<bool> borderline;
};

OraclePlacement stratify_oracle(const Graph& g, double delta, std::size_t ell, int i_max) {
    const std::size_t n = g.num_vertices();
    OraclePlacement out{std::vector<int>(n, i_max + 1), std::vector<bool>(n, false)};
    std::vector<Vertex> R = all_vertices(n);
    for (int i = 0; i <= i_max; ++i) {
        const double bound = std::pow(static_cast<double>(n), -delta * i);
        std::vector<Vertex> next;
        for (Vertex s : R) {
            double ss = 0;
            for (auto [v, p] : returning_oracle(g, R, s, ell << (i + 1), ell)) ss += p * p;
            if (std::abs(ss - bound) < 1e-9) out.borderline[s] = true;
            if (ss >= bound)
                out.level[s] = i;
            else
                next.push_back(s);
        }
        R = std::move(next);
    }
    return out;
}

PartitionProfile practical(double alpha, std::size_t hop_sweep, double p_min, double phi, std::size_t chain_hops) {
    PartitionProfile p;
    p.name = "practical";
    p.alpha = alpha;
    p.i_first = 1;
    p.i_last = 1;
    p.hop_sweep = hop_sweep;
    p.min_probability = p_min;
    p.conductance_max = phi;
    p.chain_hops = chain_hops;
    p.reach_length = 400;
    p.reach_probability = 1e-6;
    return p;
}

}  // namespace

TEST_CASE("stratify matches a from-scratch reimplementation") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Graph g = random_regular(50, 4, seed);
        const auto all = all_vertices(50);
        const auto st = stratify(g, all, 0.3, 2, 4);
        const auto oracle = stratify_oracle(g, 0.3, 2, 4);
        std::size_t placed = 0;
        for (Vertex v = 0; v < 50; ++v) {
            if (oracle.borderline[v]) continue;
            CHECK(st.level[v] == oracle.level[v]);
            placed += oracle.level[v] <= 4;
        }
        CHECK(placed > 0);
    }
}

TEST_CASE("first stratum on connected and trivial graphs") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Graph g = random_regular(20, 3, seed);
        if (!is_connected(g)) continue;
        for (std::size_t ell : {1, 2, 3}) CHECK(stratify(g, all_vertices(20), 0.5, ell, 0).strata[0].empty());
    }
    const Graph one = Graph::from_edges(1, 0, {});
    const Vertex v0[] = {0};
    const auto st = stratify(one, v0, 0.5, 1, 0);
    CHECK(st.strata[0] == std::vector<Vertex>{0});
    CHECK(st.level[0] == 0);
    const auto rep = strata_claims_check(one, st);
    CHECK(rep.ok());
    CHECK(rep.checks > 0);
    const auto corr = correlation_check(one, st, 0, 0);
    CHECK(corr.lhs == doctest::Approx(1.0));
    CHECK(corr.pass);
}

TEST_CASE("strata and residues partition the domain") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Graph g = random_graph(24, 4, 0.2, seed);
        RandomStream rng(seed);
        std::vector<Vertex> R0;
        for (Vertex v = 0; v < 24; ++v)
            if (rng.uniform() < 0.8) R0.push_back(v);
        const auto st = stratify(g, R0, 0.6, 1, 3);
        REQUIRE(st.residues.size() == 5);
        CHECK(st.residues[0] == R0);
        for (int i = 0; i <= 4; ++i) {
            std::vector<Vertex> uni(st.residues[i]);
            for (int j = 0; j < i; ++j) uni.insert(uni.end(), st.strata[j].begin(), st.strata[j].end());
            const std::size_t total = uni.size();
            std::sort(uni.begin(), uni.end());
            uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
            CHECK(uni.size() == total);
            CHECK(uni == R0);
        }
        for (Vertex v = 0; v < 24; ++v) {
            const bool in_domain = std::binary_search(R0.begin(), R0.end(), v);
            if (!in_domain) CHECK(st.level[v] == Stratification::not_in_domain);
            if (in_domain && st.level[v] <= 3) {
                const auto& S = st.strata[st.level[v]];
                CHECK(std::binary_search(S.begin(), S.end(), v));
            }
        }
        const auto again = stratify(g, R0, 0.6, 1, 3);
        CHECK(again.strata == st.strata);
        CHECK(again.residues == st.residues);
        CHECK(again.level == st.level);
    }
}

TEST_CASE("stratification claims hold") {
    const Edge c6[] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}};
    const Graph cycle = Graph::from_edges(6, 2, c6);
    const auto st = stratify(cycle, all_vertices(6), 0.5, 1, 2);
    const auto rep = strata_claims_check(cycle, st);
    CHECK(rep.ok());
    CHECK(rep.checks > 0);
    CHECK(rep.min_slack_l2 >= 0);
    CHECK(rep.min_slack_max >= 0);
    CHECK(rep.min_slack_mass >= 0);

    std::size_t violations = 0, checks = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Graph g = random_graph(20 + seed, 4, 0.25, seed);
        for (double delta : {0.3, 0.7, 0.9}) {
            const auto s = stratify(g, all_vertices(g.num_vertices()), delta, 1 + seed % 2, 3);
            const auto r = strata_claims_check(g, s, 0.1);
            violations += r.violations.size() + (r.residue_bound_holds ? 0 : 1);
            checks += r.checks;
        }
    }
    CHECK(violations == 0);
    CHECK(checks > 0);
}

TEST_CASE("correlation bounds") {
    // K2 with d = 2: the smallest nonempty stratum is S_1, reached only for delta
    // close to 1. Hand values: q^(2) from 0 is (17/32, 15/32), q^(1) rows are
    // (5/8, 3/8) and (3/8, 5/8).
    const Edge e01[] = {{0, 1}};
    const Graph k2 = Graph::from_edges(2, 2, e01);
    const auto st = stratify(k2, all_vertices(2), 0.999, 1, 1);
    REQUIRE(st.strata[1] == std::vector<Vertex>{0, 1});
    const auto c = correlation_check(k2, st, 1, 0);
    CHECK(c.lhs == doctest::Approx(32776.0 / 65536.0).epsilon(1e-12));
    CHECK(c.bound_norms == doctest::Approx((514.0 / 1024.0) * (514.0 / 1024.0) / (34.0 / 64.0)).epsilon(1e-12));
    CHECK(c.bound_power == doctest::Approx(std::pow(2.0, -1.998)).epsilon(1e-12));
    CHECK(c.pass);
    CHECK_THROWS_AS(correlation_check(k2, st, 0, 0), UsageError);

    std::size_t checked = 0;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const Graph g = random_graph(10 + 2 * seed, 3, 0.3, seed);
        const auto s = stratify(g, all_vertices(g.num_vertices()), 0.9, 1, 2);
        for (int i = 0; i <= 2; ++i)
            for (Vertex v : s.strata[i]) {
                const auto r = correlation_check(g, s, i, v);
                CHECK(r.pass);
                CHECK(r.lhs >= r.bound_norms - 1e-12);
                CHECK(r.lhs >= r.bound_power - 1e-12);
                ++checked;
            }
    }
    CHECK(checked > 0);
}

TEST_CASE("conductance on projected chains") {
    const Edge e01[] = {{0, 1}};
    const Graph k2 = Graph::from_edges(2, 2, e01);
    const Vertex t0[] = {0};
    const auto c2 = build_projected_chain(k2, all_vertices(2), 8, false);
    CHECK(conductance(c2, t0) == doctest::Approx(0.25).epsilon(1e-12));
    const auto c1 = build_projected_chain(Graph::from_edges(2, 1, e01), all_vertices(2), 8, false);
    CHECK(conductance(c1, t0) == doctest::Approx(0.5).epsilon(1e-12));

    const Graph split = cliques(2, 3);
    const auto cs = build_projected_chain(split, all_vertices(6), 64, false);
    const Vertex left[] = {0, 1, 2};
    CHECK(conductance(cs, left) == 0.0);

    const Graph g = random_graph(16, 4, 0.3, 3);
    std::vector<Vertex> S{0, 1, 2, 3, 5, 6, 8, 9, 11, 12, 14, 15};
    const auto chain = build_projected_chain_until(g, S, 1e-12, 1 << 16);
    const std::vector<Vertex> T{0, 2, 5, 8, 12, 15}, rest{1, 3, 6, 9, 11, 14};
    CHECK(conductance(chain, T) == doctest::Approx(conductance(chain, rest)).epsilon(1e-9));

    const std::vector<Vertex> none;
    CHECK_THROWS_AS(conductance(chain, none), UsageError);
    CHECK_THROWS_AS(conductance(chain, S), UsageError);
}

TEST_CASE("low-conductance pieces") {
    const Edge bridge[] = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}};
    const Graph twin = Graph::from_edges(6, 3, bridge);
    const auto chain = build_projected_chain(twin, all_vertices(6), 64, false);
    auto piece = find_low_conductance_piece(chain, 0, 4, 1e-3, 0.1);
    REQUIRE(piece);
    CHECK(piece->piece == std::vector<Vertex>{0, 1, 2});
    CHECK(piece->conductance < 0.1);
    auto other = find_low_conductance_piece(chain, 5, 4, 1e-3, 0.1);
    REQUIRE(other);
    CHECK(other->piece == std::vector<Vertex>{3, 4, 5});

    // K6 has no level set below the practical threshold. The theory threshold
    // n^(-delta/4) is about 0.8 here, loose enough to admit a half.
    const Graph k6 = complete_graph(6);
    const auto ck = build_projected_chain(k6, all_vertices(6), 64, false);
    for (Vertex s = 0; s < 6; ++s) CHECK_FALSE(find_low_conductance_piece(ck, s, 4, 1e-3, 0.2));
    auto loose = find_low_conductance_piece(ck, 0, 4, 1e-3, std::pow(6.0, -0.125));
    REQUIRE(loose);
    CHECK(loose->conductance >= 0.2);

    const Graph two = cliques(2, 4);
    const auto c2 = build_projected_chain(two, all_vertices(8), 64, false);
    auto iso = find_low_conductance_piece(c2, 5, 3, 1e-6, 1e-9);
    REQUIRE(iso);
    CHECK(iso->piece == std::vector<Vertex>{4, 5, 6, 7});
    CHECK(iso->conductance == 0.0);
}

TEST_CASE("decompose a union of cliques") {
    const Graph g = cliques(10, 8);
    PartitionProfile prof = practical(0.01, 4, 1e-3, 0.05, 64);
    prof.measure_candidates = true;
    const auto part = decompose(g, 1.0, 0.5, 1, prof);
    // Pieces are at most half of the current S, so the last clique stays heavy
    // with nothing to extract and moves to the excess set.
    REQUIRE(part.pieces.size() == 9);
    std::vector<bool> used(10, false);
    for (const auto& p : part.pieces) {
        REQUIRE(p.vertices.size() == 8);
        const std::size_t c = p.vertices.front() / 8;
        CHECK(p.vertices.back() == c * 8 + 7);
        CHECK_FALSE(used[c]);
        used[c] = true;
        CHECK(p.cut_edges == 0);
        CHECK(p.conductance == 0.0);
        REQUIRE(p.viable_candidates);
        CHECK(static_cast<double>(*p.viable_candidates) >= prof.alpha * 80 / 8);
        CHECK(*p.viable_candidates <= p.candidates);
    }
    CHECK(part.excess_size() == 8);
    CHECK(part.remainder.empty());
    CHECK(part.stalled_phases == std::vector<int>{1});
    const auto rep = verify_partition(g, part);
    CHECK(rep.ok());
    for (const auto& b : rep.bullets) CHECK(b.slack >= 0);

    int pieces = 0, excess = 0;
    for (int l : part.label()) {
        pieces += l >= 0;
        excess += l == -1;
    }
    CHECK(pieces == 72);
    CHECK(excess == 8);
}

TEST_CASE("decompose an expander and a grid") {
    const Graph k20 = complete_graph(20);
    const auto none = decompose(k20, 1.0, 0.5, 1, practical(0.01, 4, 1e-3, 0.2, 64));
    CHECK(none.pieces.empty());
    CHECK(none.remainder.size() + none.excess_size() == 20);
    CHECK(verify_partition(k20, none).ok());

    const Graph g = grid(20, 20);
    const auto part = decompose(g, 0.1, 0.5, 1, practical(0.001, 8, 1e-4, 0.2, 64));
    std::size_t covered = 0;
    for (const auto& p : part.pieces) covered += p.vertices.size();
    CHECK(covered >= 360);
    const auto rep = verify_partition(g, part);
    CHECK(rep.partition_ok);
    CHECK(rep.ok());
}

TEST_CASE("verify_partition on hand-built partitions") {
    const Graph g = grid(4, 4);
    PartitionResult part;
    part.n = 16;
    part.epsilon = 1.0;
    part.delta = 0.5;
    part.profile = practical(0.01, 4, 1e-3, 0.01, 64);
    PartitionPiece corner;
    corner.seed = 0;
    corner.phase = 1;
    corner.vertices = {0};
    part.pieces.push_back(corner);
    part.excess.push_back({});
    for (Vertex v = 1; v < 16; ++v) part.remainder.push_back(v);
    auto rep = verify_partition(g, part);
    CHECK(rep.partition_ok);
    REQUIRE(rep.bullets.size() == 3);
    CHECK(rep.bullets[0].name == "cut");
    CHECK_FALSE(rep.bullets[0].pass);
    CHECK(rep.bullets[0].slack == doctest::Approx(2.0 * 0.01 * 4 - 2.0));
    CHECK_FALSE(rep.ok());

    PartitionResult empty;
    empty.n = 16;
    empty.epsilon = 1.0;
    empty.delta = 0.5;
    empty.profile = part.profile;
    empty.remainder = all_vertices(16);
    rep = verify_partition(g, empty);
    CHECK(rep.ok());
    CHECK(rep.bullets[0].checked == 0);
    CHECK(rep.bullets[1].checked == 0);

    empty.remainder.pop_back();
    CHECK_FALSE(verify_partition(g, empty).partition_ok);
}
