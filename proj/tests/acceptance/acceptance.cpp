// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers to
// run a subset, e.g. `acceptance 1 3`.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hminor/generators.hpp"
#include "hminor/minor.hpp"
#include "hminor/strata.hpp"
#include "hminor/tester.hpp"
#include "hminor/walks.hpp"

using namespace hminor;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Graph graph_from_mask(std::size_t n, std::uint32_t mask) {
    std::vector<Edge> edges;
    std::size_t bit = 0;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v, ++bit)
            if (mask >> bit & 1u) edges.push_back({u, v});
    return Graph::from_edges(n, std::max<std::size_t>(n, 1), edges);
}

Graph random_graph(std::size_t n, std::size_t d, double p, RandomStream& rng) {
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

Graph connected_graph(std::size_t n, std::size_t d, double p, RandomStream& rng) {
    for (;;) {
        Graph g = random_graph(n, d, p, rng);
        if (is_connected(g)) return g;
    }
}

std::vector<Vertex> random_subset(std::size_t n, std::size_t k, RandomStream& rng) {
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    for (std::size_t i = 0; i + 1 < n; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
}

std::vector<Vertex> all_vertices(std::size_t n) {
    std::vector<Vertex> v(n);
    for (Vertex x = 0; x < n; ++x) v[x] = x;
    return v;
}

PracticalProfile shipped_profile() { return load_practical_profile(HMINOR_SOURCE_DIR "/config/practical.json"); }

bool certificate_round_trip(const Graph& g, const Graph& h, const MinorEmbedding& emb) {
    std::istringstream in(format_certificate(h, emb, pattern_name(h).value_or("")));
    return validate_certificate(g, h, parse_certificate(in)).empty();
}

// ---------------------------------------------------------------- criteria

Outcome minor_oracle() {
    const std::vector<Graph> small{complete_graph(3), cycle_graph(4), complete_graph(4), path_graph(4)};
    std::size_t compared = 0, disagree = 0, invalid = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
        const std::uint32_t masks = 1u << (n * (n - 1) / 2);
        for (std::uint32_t m = 0; m < masks; ++m) {
            const Graph g = graph_from_mask(n, m);
            for (const Graph& h : small) {
                auto fast = has_minor(g, h);
                auto slow = has_minor_bruteforce(g, h);
                ++compared;
                disagree += fast.has_value() != slow.has_value();
                if (fast) invalid += !validate_embedding(g, h, *fast).empty();
            }
        }
    }
    const std::vector<Graph> large{complete_graph(4), complete_bipartite(2, 3), complete_graph(5)};
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        RandomStream rng = derive_stream(seed, {1});
        const std::size_t n = 8 + rng.below(5);
        const Graph g = random_graph(n, n, 0.2 + 0.4 * rng.uniform(), rng);
        for (const Graph& h : large) {
            auto fast = has_minor(g, h);
            auto slow = has_minor_bruteforce(g, h);
            ++compared;
            disagree += fast.has_value() != slow.has_value();
            if (fast) invalid += !validate_embedding(g, h, *fast).empty();
        }
    }
    return {disagree == 0 && invalid == 0,
            fmt("%zu comparisons, %zu disagreements, %zu invalid models", compared, disagree, invalid)};
}

Outcome kuratowski() {
    std::vector<std::string> bad;
    const Graph pet = petersen_graph(), k5 = complete_graph(5), k33 = complete_bipartite(3, 3);
    auto in_petersen = has_minor(pet, k5);
    if (!in_petersen || !validate_embedding(pet, k5, *in_petersen).empty() || !certificate_round_trip(pet, k5, *in_petersen))
        bad.push_back("petersen/K5");
    const Graph g = grid(10, 10);
    if (has_minor(g, k5)) bad.push_back("grid/K5");
    if (has_minor(g, k33)) bad.push_back("grid/K33");
    std::size_t extended = 0;
    for (Vertex u = 0; u < 6; ++u)
        for (Vertex v = u + 1; v < 6; ++v) {
            if (k33.has_edge(u, v)) continue;
            auto edges = k33.edges();
            edges.push_back({u, v});
            const Graph plus = Graph::from_edges(6, 4, edges);
            auto emb = has_minor(plus, k33);
            if (!emb || !validate_embedding(plus, k33, *emb).empty()) bad.push_back(fmt("K33+%u%u", u, v));
            ++extended;
        }
    std::string detail = fmt("petersen>K5, grid(10,10) free of K5/K33, %zu extensions of K33", extended);
    for (const auto& b : bad) detail += "; failed " + b;
    return {bad.empty(), detail};
}

Outcome returning_identities() {
    double worst_identity = 0, worst_slack = INFINITY;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        RandomStream rng = derive_stream(seed, {3});
        const std::size_t n = 4 + rng.below(27);
        const Graph g = random_graph(n, 2 + rng.below(4), 0.3, rng);
        const auto R = random_subset(n, 1 + rng.below(n), rng);
        const Vertex s = R[rng.below(R.size())], u = R[rng.below(R.size())];
        const int i = static_cast<int>(rng.below(3));
        const std::size_t ell = 1 + rng.below(3);
        const LazyOperator op(g);
        const auto id = returning_product_identity(op, R, s, u, i, ell);
        worst_identity = std::max(worst_identity, std::abs(id.lhs - id.rhs));
        const auto mb = returning_mass_lower_bound(op, R, i, ell);
        worst_slack = std::min(worst_slack, mb.average - mb.bound);
    }
    return {worst_identity <= 1e-10 && worst_slack >= -1e-12,
            fmt("200 instances, max |identity error| %.3g, min mass slack %.3g", worst_identity, worst_slack)};
}

Outcome strata_suite() {
    std::size_t claims = 0, correlations = 0, violations = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        RandomStream rng = derive_stream(seed, {4});
        const std::size_t n = 6 + rng.below(35);
        const Graph g = random_graph(n, 3 + rng.below(3), 0.25, rng);
        const double delta = seed % 2 ? 0.5 : 0.3;
        const std::size_t ell = 1 + (seed / 2) % 2;
        const auto st = stratify(g, all_vertices(n), delta, ell, 3);
        const auto rep = strata_claims_check(g, st, 0.1);
        claims += rep.checks;
        violations += rep.violations.size() + (rep.residue_bound_holds ? 0 : 1);
        for (int i = 0; i <= 3; ++i)
            for (Vertex s : st.strata[i]) {
                ++correlations;
                violations += !correlation_check(g, st, i, s).pass;
            }
    }
    return {violations == 0 && correlations > 0,
            fmt("100 instances, %zu claim checks, %zu correlation checks, %zu violations", claims, correlations,
                violations)};
}

Outcome kac_suite() {
    std::size_t failed = 0;
    double worst = 0, worst_residual = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RandomStream rng = derive_stream(seed, {5});
        const std::size_t n = 6 + rng.below(25);
        const Graph g = connected_graph(n, 4, 0.3, rng);
        const std::size_t k = (n + 2) / 3 + rng.below(n - (n + 2) / 3 + 1);
        const auto S = random_subset(n, k, rng);
        const std::size_t h = 1 + rng.below(3);
        const ProjectedChain chain = build_projected_chain_until(g, S, 1e-11, std::size_t{1} << 20);
        const auto rep = kac_check(chain, h);
        const double res = chain.max_residual();
        worst_residual = std::max(worst_residual, res);
        worst = std::max(worst, rep.error);
        failed += res >= 1e-6 || rep.error > static_cast<double>(h * n) * res + 1e-6;
    }
    return {failed == 0, fmt("50 instances, max error %.3g, max residual %.3g, %zu failures", worst, worst_residual, failed)};
}

Outcome ls_suite() {
    std::size_t checks = 0, failed = 0;
    double worst = INFINITY;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RandomStream rng = derive_stream(seed, {6});
        const std::size_t n = 5 + rng.below(26);
        const Graph g = connected_graph(n, 4, 0.3, rng);
        const auto S = random_subset(n, std::max<std::size_t>(2, n / 2 + rng.below(n / 2 + 1)), rng);
        const ProjectedChain chain = build_projected_chain_until(g, S, 1e-9, std::size_t{1} << 16);
        const Vertex s = S[rng.below(S.size())];
        for (std::size_t t = 0; t <= 5; ++t) {
            const LSCurve c = ls_curve(chain, s, t);
            failed += c.values[0] != 0.0;
            for (std::size_t k = 2; k <= c.size(); ++k) failed += c.slope(k) > c.slope(k - 1);
            if (t == 0) continue;
            for (std::size_t k = 0; k <= S.size(); ++k) {
                const auto rep = ls_lemma_check(chain, s, t, k);
                worst = std::min(worst, rep.slack);
                failed += rep.slack < -1e-9;
                ++checks;
            }
        }
    }
    return {failed == 0, fmt("50 instances, %zu lemma checks, min slack %.3g, %zu failures", checks, worst, failed)};
}

Outcome one_sided() {
    const PracticalProfile profile = shipped_profile();
    const Graph k5 = complete_graph(5);
    struct Family {
        const char* name;
        Graph g;
        std::size_t runs;
    };
    const std::vector<Family> families{{"grid", grid(100, 100), 334},
                                       {"tree", minor_free_family(MinorFreeKind::tree, 10000), 333},
                                       {"planar-plus-matching", planar_plus_matching(10000, 0, 1), 333}};
    std::size_t found = 0, budget = 0, runs = 0;
    std::string detail;
    for (const auto& f : families) {
        std::size_t here = 0;
        for (std::size_t j = 1; j <= f.runs; ++j, ++runs) {
            const auto cfg = practical_config(profile, f.g.num_vertices(), 0.05, 0.1, k5, j);
            const auto rep = find_minor(f.g, cfg);
            here += rep.outcome == TesterOutcome::minor_found;
            budget += rep.outcome == TesterOutcome::budget_exceeded;
        }
        found += here;
        detail += fmt("%s %zu/%zu found; ", f.name, here, f.runs);
    }
    return {found == 0, detail + fmt("%zu runs, %zu budget-exceeded", runs, budget)};
}

Outcome far_success() {
    const PracticalProfile profile = shipped_profile();
    const Graph k5 = complete_graph(5);
    const std::size_t n = 100000;
    std::size_t rr_found = 0, ppm_found = 0, invalid = 0;
    std::vector<std::uint64_t> rr_queries;
    for (std::uint64_t j = 1; j <= 100; ++j) {
        const Graph rr = random_regular(n, 8, j);
        const auto cfg = practical_config(profile, n, 0.05, 0.1, k5, j);
        const auto rep = find_minor(rr, cfg);
        rr_queries.push_back(rep.queries.neighbor_queries);
        if (rep.outcome == TesterOutcome::minor_found) {
            ++rr_found;
            invalid += !rep.embedding || !validate_embedding(rr, k5, *rep.embedding).empty() ||
                       !certificate_round_trip(rr, k5, *rep.embedding);
        }
        const Graph ppm = planar_plus_matching(n, n / 20, j);
        const auto prep = find_minor(ppm, practical_config(profile, n, 0.05, 0.1, k5, j));
        if (prep.outcome == TesterOutcome::minor_found) {
            ++ppm_found;
            invalid += !prep.embedding || !validate_embedding(ppm, k5, *prep.embedding).empty() ||
                       !certificate_round_trip(ppm, k5, *prep.embedding);
        }
    }
    std::nth_element(rr_queries.begin(), rr_queries.begin() + 50, rr_queries.end());
    const std::uint64_t upper = rr_queries[50];
    std::nth_element(rr_queries.begin(), rr_queries.begin() + 49, rr_queries.end());
    const double median = 0.5 * static_cast<double>(rr_queries[49] + upper);
    const double limit = static_cast<double>(n * 8) / 10;
    const bool pass = rr_found >= 90 && median <= limit && ppm_found >= 75 && invalid == 0;
    return {pass, fmt("random-regular %zu/100 found, median queries %.0f (limit %.0f); planar-plus-matching %zu/100 "
                      "found; %zu invalid certificates",
                      rr_found, median, limit, ppm_found, invalid)};
}

Outcome scaling() {
    std::ostringstream out, err;
    const int code = cli::run({"hminor", "bench", "--family", "random-regular", "--d", "8", "--n-list",
                               "4096,8192,16384,32768,65536", "--seeds", "20"},
                              out, err);
    if (code != 0) return {false, "bench exited with " + std::to_string(code) + ": " + err.str()};
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    double worst = 0;
    std::size_t pairs = 0;
    std::string detail = "ratios";
    while (std::getline(in, line)) {
        const auto comma = line.rfind(',');
        const std::string last = line.substr(comma + 1);
        if (last.empty()) continue;
        const double r = std::stod(last);
        worst = std::max(worst, r);
        ++pairs;
        detail += fmt(" %.3f", r);
    }
    return {pairs == 4 && worst <= 1.8, detail + fmt("; max %.3f", worst)};
}

// Oracle: exact collision probability of k endpoint pairs by enumerating the
// k-tuples of u endpoints, which is cheap for k <= 3.
double collision_probability(const std::vector<double>& pu, const std::vector<double>& pv, std::size_t k) {
    std::vector<std::size_t> support;
    for (std::size_t x = 0; x < pu.size(); ++x)
        if (pu[x] > 0) support.push_back(x);
    double miss = 0;
    std::vector<std::size_t> idx(k, 0);
    const double kk = static_cast<double>(k);
    for (;;) {
        double w = 1;
        std::set<std::size_t> endpoints;
        for (std::size_t j = 0; j < k; ++j) {
            w *= pu[support[idx[j]]];
            endpoints.insert(support[idx[j]]);
        }
        double q = 0;
        for (std::size_t x : endpoints) q += pv[x];
        miss += w * std::pow(std::max(0.0, 1.0 - q), kk);
        std::size_t j = 0;
        while (j < k && ++idx[j] == support.size()) idx[j++] = 0;
        if (j == k) break;
    }
    return 1.0 - miss;
}

Outcome findpath_statistics() {
    std::size_t within = 0, informative = 0;
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RandomStream rng = derive_stream(seed, {10});
        const std::size_t n = 5 + rng.below(46);
        const Graph g = random_graph(n, 3 + rng.below(2), 0.2, rng);
        const std::uint64_t k = 1 + rng.below(3);
        const int i = static_cast<int>(rng.below(3));
        const std::uint64_t ell = 1 + rng.below(2);
        const Vertex u = static_cast<Vertex>(rng.below(n));
        QueryLedger ledger;
        const Vertex v = lazy_walk_endpoint(g, u, ell << (i + 1), rng, ledger);
        const double p = collision_probability(walk_distribution(g, u, ell << i).p, walk_distribution(g, v, ell << i).p, k);
        informative += p > 0.05 && p < 0.95;
        const int trials = 10000;
        int hits = 0;
        for (int t = 0; t < trials; ++t) {
            RandomStream r = derive_stream(seed, {10, static_cast<std::uint64_t>(t)});
            hits += find_path(g, u, v, k, i, ell, r, ledger).found();
        }
        const double sigma = std::sqrt(trials * p * (1 - p));
        const double dev = std::abs(hits - trials * p);
        within += dev <= std::max(4 * sigma, 1e-9 * trials);
        worst = std::max(worst, sigma > 0 ? dev / sigma : 0.0);
    }
    return {within == 20, fmt("%zu/20 graphs within 4 sigma (%zu with 0.05 < p < 0.95), worst deviation %.2f sigma", within,
                                  informative, worst)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"minor-checker oracle equivalence", minor_oracle},
        {"Kuratowski facts", kuratowski},
        {"returning-walk identities", returning_identities},
        {"stratification theorem suite", strata_suite},
        {"projected chain return times", kac_suite},
        {"LS machinery", ls_suite},
        {"one-sidedness at scale", one_sided},
        {"far-instance success and sublinearity", far_success},
        {"query-scaling trend", scaling},
        {"FindPath statistics", findpath_statistics},
    };
    std::vector<std::size_t> chosen;
    for (int a = 1; a < argc; ++a) {
        const std::size_t c = std::strtoul(argv[a], nullptr, 10);
        if (c < 1 || c > criteria.size()) {
            std::cerr << "unknown criterion " << argv[a] << '\n';
            return 2;
        }
        chosen.push_back(c);
    }
    if (chosen.empty())
        for (std::size_t c = 1; c <= criteria.size(); ++c) chosen.push_back(c);
    int failures = 0;
    for (std::size_t c : chosen) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[c - 1].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c << " (" << criteria[c - 1].first
                  << "): " << o.detail << fmt(" [%.1fs]", secs) << std::endl;
    }
    return failures ? 1 : 0;
}
