#include <unordered_map>

#include "hminor/tester.hpp"

namespace hminor {

FindPathResult find_path(const Graph& g, Vertex u, Vertex v, std::uint64_t k, int i, std::uint64_t ell,
                         RandomStream& rng, QueryLedger& ledger) {
    if (k == 0) throw UsageError("find_path needs k >= 1");
    if (i < 0 || i > 40 || ell == 0) throw UsageError("find_path needs ell >= 1 and 0 <= i <= 40");
    const std::uint64_t length = ell << i;
    const std::uint64_t base = rng();
    FindPathResult out;
    out.from_u.reserve(k);
    out.from_v.reserve(k);
    for (std::uint64_t j = 0; j < k; ++j) {
        RandomStream s = derive_stream(base, {0, j});
        out.from_u.push_back(lazy_walk(g, u, length, s, ledger));
    }
    for (std::uint64_t j = 0; j < k; ++j) {
        RandomStream s = derive_stream(base, {1, j});
        out.from_v.push_back(lazy_walk(g, v, length, s, ledger));
    }
    std::unordered_map<Vertex, std::size_t> first_v;
    first_v.reserve(k);
    for (std::size_t j = 0; j < out.from_v.size(); ++j) first_v.emplace(out.from_v[j].end(), j);
    for (std::size_t j = 0; j < out.from_u.size(); ++j) {
        auto it = first_v.find(out.from_u[j].end());
        if (it != first_v.end()) {
            out.hit = std::make_pair(j, it->second);
            break;
        }
    }
    return out;
}

}  // namespace hminor
