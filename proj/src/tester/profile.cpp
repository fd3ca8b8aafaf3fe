#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hminor/tester.hpp"

namespace hminor {
namespace {

using json = nlohmann::json;

constexpr double count_cap = 4611686018427387904.0;   // 2^62

const json& field(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw UsageError("profile: missing field '" + where + key + "'");
    return *it;
}

double number(const json& j, const char* key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_number()) throw UsageError("profile: field '" + where + key + "' must be a number");
    return v.get<double>();
}

CountFormula formula(const json& j, const char* key) {
    const json& f = field(j, key, "");
    const std::string where = std::string(key) + ".";
    if (f.is_number()) return CountFormula{f.get<double>(), 0, 0, 1};
    if (!f.is_object()) throw UsageError(std::string("profile: field '") + key + "' must be a number or an object");
    for (auto it = f.begin(); it != f.end(); ++it)
        if (it.key() != "coef" && it.key() != "n_exp" && it.key() != "eps_exp" && it.key() != "i_base")
            throw UsageError("profile: unknown field '" + where + it.key() + "'");
    CountFormula c;
    c.coef = number(f, "coef", where);
    if (f.contains("n_exp")) c.n_exp = number(f, "n_exp", where);
    if (f.contains("eps_exp")) c.eps_exp = number(f, "eps_exp", where);
    if (f.contains("i_base")) c.i_base = number(f, "i_base", where);
    if (!(c.coef > 0) || !(c.i_base > 0)) throw UsageError("profile: '" + std::string(key) + "' must be positive");
    return c;
}

json formula_json(const CountFormula& c) {
    json j{{"coef", c.coef}};
    if (c.n_exp != 0) j["n_exp"] = c.n_exp;
    if (c.eps_exp != 0) j["eps_exp"] = c.eps_exp;
    if (c.i_base != 1) j["i_base"] = c.i_base;
    return j;
}

std::uint64_t saturate(double x) {
    if (!(x < count_cap)) return static_cast<std::uint64_t>(count_cap);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(x - 1e-9)));
}

}  // namespace

double CountFormula::raw(std::size_t n, double epsilon, int i) const {
    const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
    return coef * std::pow(nn, n_exp) * std::pow(epsilon, -eps_exp) * std::pow(i_base, i);
}

std::uint64_t CountFormula::evaluate(std::size_t n, double epsilon, int i) const {
    return saturate(raw(n, epsilon, i));
}

PracticalProfile parse_practical_profile(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("profile: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("profile: top level must be an object");
    PracticalProfile p;
    if (j.contains("name")) p.name = j["name"].get<std::string>();
    p.ell = formula(j, "ell");
    p.outer_repeats = formula(j, "outer_repeats");
    p.local_search_max_len = formula(j, "local_search_max_len");
    p.walks_per_len = formula(j, "walks_per_len");
    p.findpath_k = formula(j, "findpath_k");
    p.i_min = static_cast<int>(number(j, "i_min", ""));
    p.i_max = static_cast<int>(number(j, "i_max", ""));
    p.biclique_side = static_cast<std::size_t>(number(j, "biclique_side", ""));
    p.epsilon_cutoff = number(j, "epsilon_cutoff", "");
    p.minor_node_limit = static_cast<std::uint64_t>(number(j, "minor_node_limit", ""));
    if (p.i_min < 0 || p.i_max < p.i_min) throw UsageError("profile: need 0 <= i_min <= i_max");
    if (p.i_max > 40) throw UsageError("profile: i_max above 40");
    if (p.biclique_side == 0) throw UsageError("profile: biclique_side must be at least 1");
    return p;
}

PracticalProfile load_practical_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open profile file '" + path + "'");
    std::stringstream s;
    s << in.rdbuf();
    return parse_practical_profile(s.str());
}

std::string format_practical_profile(const PracticalProfile& p) {
    json j{{"name", p.name},
           {"ell", formula_json(p.ell)},
           {"outer_repeats", formula_json(p.outer_repeats)},
           {"local_search_max_len", formula_json(p.local_search_max_len)},
           {"walks_per_len", formula_json(p.walks_per_len)},
           {"findpath_k", formula_json(p.findpath_k)},
           {"i_min", p.i_min},
           {"i_max", p.i_max},
           {"biclique_side", p.biclique_side},
           {"epsilon_cutoff", p.epsilon_cutoff},
           {"minor_node_limit", p.minor_node_limit}};
    return j.dump(2) + "\n";
}

TesterConfig theory_config(std::size_t n, double epsilon, double delta, const Graph& pattern, std::uint64_t seed) {
    if (!(delta > 0) || !(epsilon > 0)) throw UsageError("theory profile needs delta > 0 and epsilon > 0");
    TesterConfig c;
    c.profile = "theory";
    c.n = n;
    c.delta = delta;
    c.epsilon = epsilon;
    c.pattern = pattern;
    c.seed = seed;
    const double r = static_cast<double>(pattern.num_vertices());
    const double r4 = r * r * r * r;
    const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
    c.ell = saturate(std::pow(nn, 5 * delta));
    c.epsilon_cutoff = std::pow(nn, -delta / std::exp(2 / delta));
    c.outer_repeats = CountFormula{1, 35 * delta * r4, 2, 1}.evaluate(n, epsilon);
    c.local_search_max_len = CountFormula{1, 7 * delta * r4, 0, 1}.evaluate(n, epsilon);
    c.walks_per_len = CountFormula{1, 30 * delta * r4, 1, 1}.evaluate(n, epsilon);
    c.i_min = static_cast<int>(5 * r4);
    c.i_max = static_cast<int>(std::floor(1 / delta)) + 4;
    c.biclique_side = static_cast<std::size_t>(r * r);
    c.findpath_k = CountFormula{1, 9 * delta, 0, std::pow(nn, delta / 2)};
    return c;
}

TesterConfig practical_config(const PracticalProfile& p, std::size_t n, double epsilon, double delta,
                              const Graph& pattern, std::uint64_t seed) {
    TesterConfig c;
    c.profile = p.name;
    c.n = n;
    c.delta = delta;
    c.epsilon = epsilon;
    c.pattern = pattern;
    c.seed = seed;
    c.ell = p.ell.evaluate(n, epsilon);
    c.epsilon_cutoff = p.epsilon_cutoff;
    c.outer_repeats = p.outer_repeats.evaluate(n, epsilon);
    c.local_search_max_len = p.local_search_max_len.evaluate(n, epsilon);
    c.walks_per_len = p.walks_per_len.evaluate(n, epsilon);
    c.i_min = p.i_min;
    c.i_max = p.i_max;
    c.biclique_side = p.biclique_side;
    c.findpath_k = p.findpath_k;
    c.minor_node_limit = p.minor_node_limit;
    return c;
}

std::vector<std::string> TesterConfig::problems() const {
    std::vector<std::string> out;
    if (pattern.num_vertices() == 0) out.push_back("pattern has no vertices");
    if (!(epsilon > 0 && epsilon <= 1)) out.push_back("epsilon must lie in (0, 1]");
    if (i_min > i_max) out.push_back("biclique i-range " + std::to_string(i_min) + ".." + std::to_string(i_max) + " is empty");
    if (i_max > 40) out.push_back("i_max above 40");
    if (biclique_side == 0) out.push_back("biclique side must be at least 1");
    if (ell == 0 || outer_repeats == 0 || local_search_max_len == 0 || walks_per_len == 0)
        out.push_back("all counts must be at least 1");
    if (i_max <= 40 && i_max >= 0 && (ell > (std::uint64_t{1} << (62 - std::min(i_max, 62)))))
        out.push_back("walk length 2^i_max * ell overflows");
    return out;
}

double TesterConfig::largest_count() const {
    double m = static_cast<double>(std::max({ell, outer_repeats, local_search_max_len, walks_per_len}));
    if (i_min <= i_max) m = std::max(m, findpath_k.raw(n, epsilon, i_max));
    return m;
}

}  // namespace hminor
