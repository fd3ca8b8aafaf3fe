#pragma once

#include <cstdint>
#include <string>

#include "hminor/graph.hpp"

namespace hminor {

/// w x h grid, vertex y*w + x. Degree bound 4.
Graph grid(std::size_t w, std::size_t h);

/// Random d-regular graph from the pairing model. Pairs are drawn one at a
/// time and a pair that would make a loop or a repeated edge is redrawn; a
/// stuck attempt restarts from scratch (at most 10^4 restarts).
Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

/// Row-major partial grid of width floor(sqrt(n)) plus `extra` random edges
/// forming a matching (pairwise disjoint endpoints, none already adjacent).
/// Degree bound 5.
Graph planar_plus_matching(std::size_t n, std::size_t extra, std::uint64_t seed);

enum class MinorFreeKind { tree, cycle, outerplanar_fan, series_parallel_ladder };

/// tree: complete binary tree (d=3). cycle: C_n (d=2). outerplanar_fan:
/// triangle strip with edges i~i+1, i~i+2 (d=4). series_parallel_ladder:
/// P_{n/2} x K2 (d=3, n even).
Graph minor_free_family(MinorFreeKind kind, std::size_t n);

MinorFreeKind parse_minor_free_kind(const std::string& name);

}  // namespace hminor
