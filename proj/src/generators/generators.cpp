#include "hminor/generators.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "hminor/rng.hpp"

namespace hminor {
namespace {

std::uint64_t pair_key(Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

// One pairing attempt; false when it gets stuck.
bool try_pairing(std::size_t n, std::size_t d, RandomStream& rng, std::vector<Edge>& edges) {
    std::vector<Vertex> points;
    points.reserve(n * d);
    for (Vertex v = 0; v < n; ++v)
        for (std::size_t k = 0; k < d; ++k) points.push_back(v);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(n * d);
    edges.clear();
    while (!points.empty()) {
        bool paired = false;
        // Redraws are cheap while many points remain; a long run of failures means stuck.
        for (int attempt = 0; attempt < 64 && !paired; ++attempt) {
            const std::size_t m = points.size();
            std::size_t i = rng.below(m), j = rng.below(m - 1);
            if (j >= i) ++j;
            Vertex a = points[i], b = points[j];
            if (a == b || seen.count(pair_key(a, b))) continue;
            seen.insert(pair_key(a, b));
            edges.push_back({std::min(a, b), std::max(a, b)});
            if (i < j) std::swap(i, j);
            points[i] = points.back();
            points.pop_back();
            points[j] = points.back();
            points.pop_back();
            paired = true;
        }
        if (!paired) return false;
    }
    return true;
}

}  // namespace

Graph grid(std::size_t w, std::size_t h) {
    if (w == 0 || h == 0) throw UsageError("grid dimensions must be positive");
    std::vector<Edge> edges;
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) {
            auto v = static_cast<Vertex>(y * w + x);
            if (x + 1 < w) edges.push_back({v, v + 1});
            if (y + 1 < h) edges.push_back({v, static_cast<Vertex>(v + w)});
        }
    return Graph::from_edges(w * h, 4, edges);
}

Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
    if ((n * d) % 2 != 0) throw UsageError("random_regular needs n*d even");
    if (d >= n && n > 0) throw UsageError("random_regular needs d < n");
    RandomStream rng = derive_stream(seed, {0x7265677ULL, n, d});
    std::vector<Edge> edges;
    for (int round = 0; round < 10000; ++round) {
        if (try_pairing(n, d, rng, edges)) {
            std::sort(edges.begin(), edges.end());
            return Graph::from_edges(n, d, edges);
        }
    }
    throw UsageError("random_regular: pairing failed after 10000 restarts");
}

Graph planar_plus_matching(std::size_t n, std::size_t extra, std::uint64_t seed) {
    if (n == 0) throw UsageError("planar_plus_matching needs n >= 1");
    if (2 * extra > n) throw UsageError("planar_plus_matching: at most n/2 extra edges fit in a matching");
    const auto w = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t v = 0; v < n; ++v) {
        if ((v % w) + 1 < w && v + 1 < n) edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(v + 1)});
        if (v + w < n) edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(v + w)});
    }
    for (const Edge& e : edges) seen.insert(pair_key(e.u, e.v));
    RandomStream rng = derive_stream(seed, {0x706c616eULL, n, extra});
    std::vector<Vertex> order(n);
    for (std::size_t v = 0; v < n; ++v) order[v] = static_cast<Vertex>(v);
    for (std::size_t attempt = 0; attempt < 100; ++attempt) {
        std::vector<Edge> added;
        for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
        for (std::size_t i = 0; i + 1 < n && added.size() < extra; i += 2) {
            Vertex a = order[i], b = order[i + 1];
            if (!seen.count(pair_key(a, b))) added.push_back({std::min(a, b), std::max(a, b)});
        }
        if (added.size() == extra) {
            edges.insert(edges.end(), added.begin(), added.end());
            std::sort(edges.begin(), edges.end());
            return Graph::from_edges(n, 5, edges);
        }
    }
    throw UsageError("planar_plus_matching: could not place the extra edges");
}

Graph minor_free_family(MinorFreeKind kind, std::size_t n) {
    std::vector<Edge> edges;
    auto V = [](std::size_t v) { return static_cast<Vertex>(v); };
    switch (kind) {
    case MinorFreeKind::tree:
        if (n == 0) throw UsageError("tree needs n >= 1");
        for (std::size_t v = 1; v < n; ++v) edges.push_back({V((v - 1) / 2), V(v)});
        return Graph::from_edges(n, 3, edges);
    case MinorFreeKind::cycle:
        if (n < 3) throw UsageError("cycle needs n >= 3");
        for (std::size_t v = 0; v + 1 < n; ++v) edges.push_back({V(v), V(v + 1)});
        edges.push_back({0, V(n - 1)});
        return Graph::from_edges(n, 2, edges);
    case MinorFreeKind::outerplanar_fan:
        if (n < 3) throw UsageError("outerplanar-fan needs n >= 3");
        for (std::size_t v = 0; v + 1 < n; ++v) {
            edges.push_back({V(v), V(v + 1)});
            if (v + 2 < n) edges.push_back({V(v), V(v + 2)});
        }
        return Graph::from_edges(n, 4, edges);
    case MinorFreeKind::series_parallel_ladder: {
        if (n < 4 || n % 2 != 0) throw UsageError("series-parallel-ladder needs even n >= 4");
        const std::size_t m = n / 2;
        for (std::size_t i = 0; i < m; ++i) {
            edges.push_back({V(i), V(i + m)});
            if (i + 1 < m) {
                edges.push_back({V(i), V(i + 1)});
                edges.push_back({V(i + m), V(i + m + 1)});
            }
        }
        std::sort(edges.begin(), edges.end());
        return Graph::from_edges(n, 3, edges);
    }
    }
    throw UsageError("unknown minor-free family");
}

MinorFreeKind parse_minor_free_kind(const std::string& name) {
    if (name == "tree") return MinorFreeKind::tree;
    if (name == "cycle") return MinorFreeKind::cycle;
    if (name == "outerplanar-fan") return MinorFreeKind::outerplanar_fan;
    if (name == "series-parallel-ladder") return MinorFreeKind::series_parallel_ladder;
    throw UsageError("unknown minor-free family '" + name + "'");
}

}  // namespace hminor
