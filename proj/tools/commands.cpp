#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cli.hpp"
#include "hminor/generators.hpp"
#include "hminor/minor.hpp"
#include "hminor/strata.hpp"
#include "hminor/tester.hpp"
#include "hminor/walks.hpp"

#ifndef HMINOR_DEFAULT_PROFILE
#define HMINOR_DEFAULT_PROFILE "config/practical.json"
#endif

namespace hminor::cli {
namespace {

// Above this any single loop bound is treated as not runnable.
constexpr double feasible_count = 1e9;

const char* bench_columns =
    "bench CSV columns: family,n,seeds,median_neighbor_queries,success_rate,budget_rate,doubling_ratio\n"
    "  doubling_ratio = (q(n)/q(n_prev))^(1/log2(n/n_prev)); q(2n)/q(n) for a doubling n-list.\n";

const char* test_columns =
    "test --format csv columns: n,seed,outcome,provenance,phase,neighbor_queries,vertex_samples,\n"
    "  induced_subgraph_queries,repeats,local_search_walks,largest_local_set,findpath_calls,\n"
    "  findpath_successes,complete_grids,assembled,bad_type1,bad_type2,bad_type3,minor_calls,\n"
    "  minor_budget_hits\n";

struct TestOptions {
    std::string graph;
    std::string pattern = "K5";
    double epsilon = 0.05;
    double delta = 0.1;
    std::string profile = "practical";
    std::string profile_file = HMINOR_DEFAULT_PROFILE;
    std::uint64_t seed = 1;
    double time_budget = 0;
    std::string out;
    std::string format = "text";
    bool no_diagnostics = false;
};

TesterConfig resolve_config(const TestOptions& o, const Graph& g, const Graph& h, std::uint64_t seed) {
    TesterConfig cfg;
    if (o.profile == "theory") {
        cfg = theory_config(g.num_vertices(), o.epsilon, o.delta, h, seed);
        auto problems = cfg.problems();
        if (!problems.empty()) throw UsageError("theory profile is not runnable: " + problems.front());
        if (cfg.largest_count() > feasible_count) {
            std::ostringstream s;
            s << "theory profile is not runnable at n=" << g.num_vertices() << ": a loop bound is "
              << std::setprecision(3) << cfg.largest_count() << " (use --profile practical)";
            throw UsageError(s.str());
        }
    } else {
        cfg = practical_config(load_practical_profile(o.profile_file), g.num_vertices(), o.epsilon, o.delta, h, seed);
    }
    if (o.time_budget > 0) cfg.minor_time_budget = o.time_budget;
    cfg.diagnostics = !o.no_diagnostics;
    return cfg;
}

void add_tester_flags(CLI::App* c, TestOptions& o) {
    c->add_option("--pattern", o.pattern, "K5, K33, Ka:b, Kr, Cr, Pr, petersen, wagner, or a graph file")
        ->capture_default_str();
    c->add_option("--epsilon", o.epsilon, "proximity parameter")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    c->add_option("--delta", o.delta, "small constant of the theory profile")->capture_default_str();
    c->add_option("--profile", o.profile, "theory or practical")
        ->capture_default_str()
        ->check(CLI::IsMember({"theory", "practical"}));
    c->add_option("--profile-file", o.profile_file, "practical profile JSON")->capture_default_str();
    c->add_option("--seed", o.seed, "master seed")->capture_default_str();
    c->add_option("--time-budget", o.time_budget, "seconds per exact minor search (0: none)")->capture_default_str();
    c->add_flag("--no-diagnostics", o.no_diagnostics, "skip biclique assembly and bad-event counts");
}

std::ostream& open_out(const std::string& path, std::ofstream& file, std::ostream& fallback) {
    if (path.empty() || path == "-") return fallback;
    file.open(path);
    if (!file) throw UsageError("cannot write '" + path + "'");
    return file;
}

// ---------------------------------------------------------------- generate

struct GenerateOptions {
    std::string family;
    std::size_t w = 0, h = 0, n = 0, d = 8, extra = 0;
    std::uint64_t seed = 1;
    std::string out;
};

Graph generate(const GenerateOptions& o) {
    if (o.family == "grid") return grid(o.w, o.h);
    if (o.family == "random-regular") return random_regular(o.n, o.d, o.seed);
    if (o.family == "planar-plus-matching") return planar_plus_matching(o.n, o.extra, o.seed);
    return minor_free_family(parse_minor_free_kind(o.family), o.n);
}

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
    std::ofstream file;
    write_graph(generate(o), open_out(o.out, file, out));
    return exit_ok;
}

// ---------------------------------------------------------------- test

int cmd_test(const TestOptions& o, std::ostream& out) {
    const Graph g = read_graph(o.graph);
    const Graph h = parse_pattern(o.pattern);
    const TesterConfig cfg = resolve_config(o, g, h, o.seed);
    const TesterReport rep = find_minor(g, cfg);
    if (o.format == "csv")
        out << report_csv_header() << '\n' << report_csv_row(rep, cfg) << '\n';
    else
        out << format_report(rep, cfg);
    if (rep.embedding && !o.out.empty()) {
        std::ofstream file(o.out);
        if (!file) throw UsageError("cannot write '" + o.out + "'");
        write_certificate(file, h, *rep.embedding, o.pattern);
    }
    switch (rep.outcome) {
    case TesterOutcome::minor_found: return exit_minor_found;
    case TesterOutcome::budget_exceeded: return exit_budget;
    case TesterOutcome::accept: break;
    }
    return exit_ok;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& graph_path, const std::string& cert_path, const std::string& pattern,
                 std::ostream& out) {
    const Graph g = read_graph(graph_path);
    std::ifstream in(cert_path);
    if (!in) throw UsageError("cannot read '" + cert_path + "'");
    const ParsedCertificate cert = parse_certificate(in);
    std::string name = pattern;
    if (name.empty()) {
        if (!cert.pattern || *cert.pattern == "custom")
            throw UsageError("certificate names no known pattern; pass --pattern");
        name = *cert.pattern;
    }
    const Graph h = parse_pattern(name);
    auto violations = validate_certificate(g, h, cert);
    if (violations.empty()) {
        out << "ok\n";
        return exit_ok;
    }
    for (const auto& v : violations) out << "violation " << to_string(v.kind) << ": " << v.message << '\n';
    return exit_minor_found;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeOptions {
    std::string graph;
    std::string suite;
    double delta = 0.5;
    std::size_t ell = 1;
    int i_max = 2;
    double epsilon = 0.1;
    Vertex source = 0;
    std::size_t t = 5;
    std::size_t h = 3;
    double residual = 1e-11;
    std::size_t t_cap = 1 << 16;
    int r = 5;
    std::optional<double> alpha, conductance_max, min_probability;
    std::optional<std::size_t> hop_sweep, chain_hops;
    std::optional<int> i_first, i_last;
    std::string out;
};

std::vector<Vertex> all_vertices(const Graph& g) {
    std::vector<Vertex> v(g.num_vertices());
    for (Vertex x = 0; x < v.size(); ++x) v[x] = x;
    return v;
}

int analyze_stratify(const Graph& g, const AnalyzeOptions& o, std::ostream& out) {
    const auto all = all_vertices(g);
    const Stratification s = stratify(g, all, o.delta, o.ell, o.i_max);
    for (int i = 0; i <= o.i_max; ++i)
        out << "# stratum " << i << " size " << s.strata[i].size() << " threshold " << s.threshold(i) << '\n';
    out << "# unplaced " << s.residues.back().size() << '\n';
    out << "vertex,stratum\n";
    for (Vertex v = 0; v < g.num_vertices(); ++v) out << v << ',' << s.level[v] << '\n';
    return exit_ok;
}

int analyze_decompose(const Graph& g, const AnalyzeOptions& o, std::ostream& out) {
    PartitionProfile p = PartitionProfile::theory(g.num_vertices(), o.epsilon, o.delta, o.r);
    if (o.alpha || o.conductance_max || o.min_probability || o.hop_sweep || o.i_first || o.i_last || o.chain_hops)
        p.name = "practical";
    if (o.alpha) p.alpha = *o.alpha;
    if (o.conductance_max) p.conductance_max = *o.conductance_max;
    if (o.min_probability) p.min_probability = *o.min_probability;
    if (o.hop_sweep) p.hop_sweep = *o.hop_sweep;
    if (o.chain_hops) p.chain_hops = *o.chain_hops;
    if (o.i_first) p.i_first = *o.i_first;
    if (o.i_last) p.i_last = *o.i_last;
    const PartitionResult part = decompose(g, o.epsilon, o.delta, o.ell, p);
    const PartitionReport rep = verify_partition(g, part);
    out << "# profile " << p.name << " alpha " << p.alpha << " phases " << p.i_first << ".." << p.i_last << '\n';
    out << "# pieces " << part.pieces.size() << " excess " << part.excess_size() << " remainder "
        << part.remainder.size() << '\n';
    for (const auto& b : rep.bullets)
        out << "# " << b.name << ' ' << (b.pass ? "pass" : "FAIL") << " slack " << b.slack << " checked " << b.checked
            << '\n';
    out << "# partition " << (rep.partition_ok ? "ok" : "FAIL " + rep.partition_detail) << '\n';
    out << "vertex,piece\n";
    const auto label = part.label();
    for (Vertex v = 0; v < g.num_vertices(); ++v) out << v << ',' << label[v] << '\n';
    return rep.ok() ? exit_ok : exit_minor_found;
}

int analyze_ls_curve(const Graph& g, const AnalyzeOptions& o, std::ostream& out) {
    const auto all = all_vertices(g);
    if (o.source >= g.num_vertices()) throw UsageError("--source out of range");
    const ProjectedChain chain = build_projected_chain_until(g, all, o.residual, o.t_cap);
    const LSCurve c = ls_curve(chain, o.source, o.t);
    out << "k,h_t\n";
    for (std::size_t k = 0; k < c.values.size(); ++k) out << k << ',' << std::setprecision(12) << c.values[k] << '\n';
    return exit_ok;
}

int analyze_kac(const Graph& g, const AnalyzeOptions& o, std::ostream& out) {
    // S: every other vertex, so that hops really leave S.
    std::vector<Vertex> s;
    for (Vertex v = 0; v < g.num_vertices(); v += 2) s.push_back(v);
    const ProjectedChain chain = build_projected_chain_until(g, s, o.residual, o.t_cap);
    const KacReport k = kac_check(chain, o.h);
    out << "members,h,expected_length,target,error,residual,tolerance,pass\n";
    out << s.size() << ',' << o.h << ',' << std::setprecision(12) << k.expected_length << ',' << k.target << ','
        << k.error << ',' << chain.max_residual() << ',' << k.tolerance << ',' << (k.pass ? 1 : 0) << '\n';
    return k.pass || k.inconclusive ? exit_ok : exit_minor_found;
}

int analyze_lemmas(const Graph& g, const AnalyzeOptions& o, std::ostream& out) {
    const auto all = all_vertices(g);
    const Stratification s = stratify(g, all, o.delta, o.ell, o.i_max);
    const StrataClaimsReport claims = strata_claims_check(g, s, o.epsilon);
    std::size_t corr = 0, corr_fail = 0;
    for (int i = 0; i <= o.i_max; ++i)
        for (Vertex v : s.strata[i]) {
            ++corr;
            if (!correlation_check(g, s, i, v).pass) ++corr_fail;
        }
    out << "check,instances,violations\n";
    out << "strata_claims," << claims.checks << ',' << claims.violations.size() << '\n';
    out << "correlation," << corr << ',' << corr_fail << '\n';
    for (const auto& v : claims.violations)
        out << "# violation " << v.claim << " i=" << v.i << " j=" << v.j << " s=" << v.s << " value=" << v.value
            << " bound=" << v.bound << '\n';
    if (claims.residue_bound_applicable) out << "# size bound " << (claims.residue_bound_holds ? "holds" : "FAILS") << '\n';
    return claims.ok() && corr_fail == 0 ? exit_ok : exit_minor_found;
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
    const Graph g = read_graph(o.graph);
    std::ofstream file;
    std::ostream& dst = open_out(o.out, file, out);
    if (o.suite == "stratify") return analyze_stratify(g, o, dst);
    if (o.suite == "decompose") return analyze_decompose(g, o, dst);
    if (o.suite == "ls-curve") return analyze_ls_curve(g, o, dst);
    if (o.suite == "kac") return analyze_kac(g, o, dst);
    return analyze_lemmas(g, o, dst);
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
    TestOptions test;
    std::string family = "random-regular";
    std::vector<std::size_t> sizes{4096, 8192, 16384, 32768, 65536};
    std::size_t d = 8;
    std::size_t seeds = 20;
    std::size_t jobs = 1;
};

Graph bench_graph(const BenchOptions& o, std::size_t n, std::uint64_t seed) {
    if (o.family == "random-regular") return random_regular(n, o.d, seed);
    if (o.family == "planar-plus-matching")
        return planar_plus_matching(n, static_cast<std::size_t>(o.test.epsilon * static_cast<double>(n)), seed);
    if (o.family == "grid") {
        const auto w = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
        return grid(w, w);
    }
    return minor_free_family(parse_minor_free_kind(o.family), n);
}

int cmd_bench(const BenchOptions& o, std::ostream& out) {
    const Graph h = parse_pattern(o.test.pattern);
    std::ofstream file;
    std::ostream& dst = open_out(o.test.out, file, out);
    dst << "family,n,seeds,median_neighbor_queries,success_rate,budget_rate,doubling_ratio\n";
    double prev_q = 0;
    std::size_t prev_n = 0;
    for (std::size_t n : o.sizes) {
        std::vector<TesterReport> reports(o.seeds);
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (std::size_t j; (j = next.fetch_add(1)) < o.seeds;) {
                try {
                    const std::uint64_t seed = o.test.seed + j;
                    const Graph g = bench_graph(o, n, seed);
                    reports[j] = find_minor(g, resolve_config(o.test, g, h, seed));
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t t = 1; t < std::max<std::size_t>(1, o.jobs); ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);

        std::vector<double> q;
        std::size_t found = 0, budget = 0;
        for (const auto& r : reports) {
            q.push_back(static_cast<double>(r.queries.neighbor_queries));
            found += r.outcome == TesterOutcome::minor_found;
            budget += r.outcome == TesterOutcome::budget_exceeded;
        }
        std::sort(q.begin(), q.end());
        const double median = q.empty() ? 0 : (q.size() % 2 ? q[q.size() / 2] : (q[q.size() / 2 - 1] + q[q.size() / 2]) / 2);
        const double seeds = static_cast<double>(std::max<std::size_t>(o.seeds, 1));
        dst << o.family << ',' << n << ',' << o.seeds << ',' << median << ',' << found / seeds << ','
            << budget / seeds << ',';
        if (prev_n > 0 && prev_q > 0 && n > prev_n)
            dst << std::pow(median / prev_q, 1.0 / std::log2(static_cast<double>(n) / static_cast<double>(prev_n)));
        dst << '\n';
        prev_q = median;
        prev_n = n;
    }
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Query-based H-minor tester for bounded-degree graphs"};
    app.footer(std::string("exit codes: 0 accept/ok, 1 minor found or check failed, 2 usage error, 3 budget exceeded\n") +
               test_columns + bench_columns);
    app.require_subcommand(1);

    GenerateOptions gen;
    auto* c_gen = app.add_subcommand("generate", "write a benchmark graph");
    c_gen->set_help_flag("--help", "print this help");
    c_gen->add_option("family", gen.family, "grid, random-regular, planar-plus-matching, tree, cycle, outerplanar-fan, "
                                            "series-parallel-ladder")
        ->required()
        ->check(CLI::IsMember({"grid", "random-regular", "planar-plus-matching", "tree", "cycle", "outerplanar-fan",
                               "series-parallel-ladder"}));
    c_gen->add_option("--w", gen.w, "grid width");
    c_gen->add_option("--h", gen.h, "grid height");
    c_gen->add_option("--n", gen.n, "vertex count");
    c_gen->add_option("--d", gen.d, "degree (random-regular)")->capture_default_str();
    c_gen->add_option("--extra", gen.extra, "matching edges (planar-plus-matching)");
    c_gen->add_option("--seed", gen.seed, "seed")->capture_default_str();
    c_gen->add_option("--out", gen.out, "output file (default stdout)");

    TestOptions test;
    auto* c_test = app.add_subcommand("test", "run the tester on a graph file");
    c_test->add_option("--graph", test.graph, "graph file")->required();
    add_tester_flags(c_test, test);
    c_test->add_option("--out", test.out, "certificate file written when a minor is found");
    c_test->add_option("--format", test.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

    AnalyzeOptions an;
    auto* c_an = app.add_subcommand("analyze", "exact walk and stratification analyses");
    c_an->set_help_flag("--help", "print this help");
    c_an->add_option("suite", an.suite, "stratify, decompose, ls-curve, kac, lemmas")
        ->required()
        ->check(CLI::IsMember({"stratify", "decompose", "ls-curve", "kac", "lemmas"}));
    c_an->add_option("--graph", an.graph, "graph file")->required();
    c_an->add_option("--delta", an.delta)->capture_default_str();
    c_an->add_option("--ell", an.ell)->capture_default_str();
    c_an->add_option("--i-max", an.i_max)->capture_default_str();
    c_an->add_option("--epsilon", an.epsilon)->capture_default_str();
    c_an->add_option("--source", an.source, "start vertex (ls-curve)")->capture_default_str();
    c_an->add_option("--t", an.t, "hop count (ls-curve)")->capture_default_str();
    c_an->add_option("--h", an.h, "hops (kac)")->capture_default_str();
    c_an->add_option("--residual", an.residual, "projected-chain residual target")->capture_default_str();
    c_an->add_option("--t-cap", an.t_cap, "largest projected-chain truncation")->capture_default_str();
    c_an->add_option("--r", an.r, "pattern size for decompose thresholds")->capture_default_str();
    c_an->add_option("--alpha", an.alpha);
    c_an->add_option("--conductance-max", an.conductance_max);
    c_an->add_option("--min-probability", an.min_probability);
    c_an->add_option("--hop-sweep", an.hop_sweep);
    c_an->add_option("--chain-hops", an.chain_hops);
    c_an->add_option("--i-first", an.i_first);
    c_an->add_option("--i-last", an.i_last);
    c_an->add_option("--out", an.out, "output file (default stdout)");

    BenchOptions bench;
    auto* c_bench = app.add_subcommand("bench", "median queries and success rate across sizes");
    c_bench->add_option("--family", bench.family)
        ->capture_default_str()
        ->check(CLI::IsMember({"random-regular", "planar-plus-matching", "grid", "tree", "cycle", "outerplanar-fan",
                               "series-parallel-ladder"}));
    c_bench->add_option("--n-list", bench.sizes, "sizes")->delimiter(',')->capture_default_str();
    c_bench->add_option("--d", bench.d, "degree (random-regular)")->capture_default_str();
    c_bench->add_option("--seeds", bench.seeds, "runs per size")->capture_default_str()->check(CLI::PositiveNumber);
    c_bench->add_option("--jobs", bench.jobs, "worker threads")->capture_default_str();
    add_tester_flags(c_bench, bench.test);
    c_bench->add_option("--out", bench.test.out, "CSV file (default stdout)");

    std::string vgraph, vcert, vpattern;
    auto* c_val = app.add_subcommand("validate", "check a certificate against a graph");
    c_val->add_option("--graph", vgraph, "graph file")->required();
    c_val->add_option("--certificate", vcert, "certificate file")->required();
    c_val->add_option("--pattern", vpattern, "pattern (default: from the certificate header)");

    std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }
    try {
        if (c_gen->parsed()) return cmd_generate(gen, out);
        if (c_test->parsed()) return cmd_test(test, out);
        if (c_an->parsed()) return cmd_analyze(an, out);
        if (c_bench->parsed()) return cmd_bench(bench, out);
        return cmd_validate(vgraph, vcert, vpattern, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

}  // namespace hminor::cli
