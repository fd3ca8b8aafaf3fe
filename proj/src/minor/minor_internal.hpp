#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hminor/minor.hpp"

namespace hminor::detail {

struct BudgetExhausted {};

class Budget {
public:
    Budget(std::uint64_t limit, std::optional<std::chrono::steady_clock::time_point> deadline)
        : limit_(limit), deadline_(deadline) {}

    void tick() {
        ++nodes_;
        if (limit_ && nodes_ > limit_) throw BudgetExhausted{};
        if (deadline_ && (nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > *deadline_)
            throw BudgetExhausted{};
    }
    void check_deadline() const {
        if (deadline_ && std::chrono::steady_clock::now() > *deadline_) throw BudgetExhausted{};
    }
    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    std::uint64_t limit_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::uint64_t nodes_ = 0;
};

/// How a child graph maps back into its parent. An expanded child edge (a, b)
/// with a < b stands for a path a - interior... - b of parent vertices that no
/// other child edge uses.
struct Lift {
    std::vector<Vertex> to_parent;
    std::map<std::pair<Vertex, Vertex>, std::vector<Vertex>> expansions;
};

struct Piece {
    Graph graph;
    Lift lift;
};

MinorEmbedding lift_embedding(const Lift& lift, const MinorEmbedding& child);

/// Child graph on the listed parent vertices (induced), identity lift.
Piece induced_piece(const Graph& g, std::vector<Vertex> vertices);

/// Peels vertices of degree <= 1 (min_degree_h >= 2) and suppresses degree-2
/// vertices (min_degree_h >= 3) until neither applies.
Piece reduce_low_degree(const Graph& g, std::size_t min_degree_h);

/// Vertex sets of the biconnected components (blocks with at least one edge).
std::vector<std::vector<Vertex>> blocks(const Graph& g);

/// A pair {u, v} whose removal disconnects g, if any.
std::optional<std::pair<Vertex, Vertex>> two_separator(const Graph& g);

/// Torsos of the 2-separation {u, v}: each side plus u, v and the edge uv,
/// which is virtual (routed through another side) when uv is not in g.
std::vector<Piece> torsos(const Graph& g, Vertex u, Vertex v);

/// Vertex connectivity of h, capped at 3.
int connectivity_capped(const Graph& h);

std::optional<MinorEmbedding> subdivision_embedding(const Graph& g, const std::vector<Edge>& edges, const Graph& h);

/// Model built from vertex classes: class phi[x] of the partition becomes the branch set of x.
std::optional<MinorEmbedding> embedding_from_classes(const Graph& g, const Graph& h,
                                                     const std::vector<std::vector<Vertex>>& classes,
                                                     const std::vector<Vertex>& phi);

}  // namespace hminor::detail
