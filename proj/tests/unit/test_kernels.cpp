#include <cmath>
#include <cstring>

#include <doctest.h>

#include "hminor/generators.hpp"
#include "hminor/kernels.hpp"
#include "hminor/walks.hpp"

using namespace hminor;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    RandomStream rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform() * (rng.uniform() < 0.2 ? 0.0 : 1.0);
    return x;
}

}  // namespace

TEST_CASE("scalar table is always available and first") {
    auto tables = kernels::available_tables();
    REQUIRE_FALSE(tables.empty());
    CHECK(tables.front() == &kernels::scalar_table());
    CHECK(kernels::scalar_table().name == "scalar");
    bool active_listed = false;
    for (auto* t : tables) active_listed |= t == &kernels::active();
    CHECK(active_listed);
}

TEST_CASE("padded adjacency turns empty slots into stays") {
    const Edge e[] = {{0, 1}};
    const Graph g = Graph::from_edges(3, 2, e);
    auto a = kernels::PaddedAdjacency::from_graph(g);
    CHECK(a.n == 3);
    CHECK(a.slots == 2);
    CHECK(a.index[0 * 3 + 0] == 1);
    CHECK(a.index[1 * 3 + 0] == 0);
    CHECK(a.index[1 * 3 + 2] == 2);
    auto z = kernels::PaddedAdjacency::from_graph(Graph::from_edges(2, 0, {}));
    CHECK(z.slots == 1);
}

TEST_CASE("vector kernels agree with the scalar reference") {
    const auto& ref = kernels::scalar_table();
    auto tables = kernels::available_tables();
    const std::vector<Graph> graphs{grid(7, 5), random_regular(64, 3, 2), minor_free_family(MinorFreeKind::tree, 37),
                                    planar_plus_matching(50, 10, 4), Graph::from_edges(5, 0, {})};
    for (const auto* t : tables) {
        CAPTURE(t->name);
        for (const Graph& g : graphs) {
            const auto a = kernels::PaddedAdjacency::from_graph(g);
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                const auto x = random_vector(g.num_vertices(), seed);
                std::vector<double> y_ref(x.size()), y(x.size());
                ref.lazy_apply(a, x.data(), y_ref.data());
                t->lazy_apply(a, x.data(), y.data());
                CHECK(std::memcmp(y.data(), y_ref.data(), y.size() * sizeof(double)) == 0);
            }
        }
        for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 1001u}) {
            const auto x = random_vector(n, n + 11), m = random_vector(n, n + 12);
            auto xr = x, xv = x;
            ref.mask_multiply(xr.data(), m.data(), n);
            t->mask_multiply(xv.data(), m.data(), n);
            CHECK(xr == xv);
            const double scale = 1e-12 * static_cast<double>(n + 1);
            CHECK(std::abs(t->dot(x.data(), m.data(), n) - ref.dot(x.data(), m.data(), n)) <= scale);
            CHECK(std::abs(t->sum(x.data(), n) - ref.sum(x.data(), n)) <= scale);
            CHECK(std::abs(t->sum_squares(x.data(), n) - ref.sum_squares(x.data(), n)) <= scale);
            if (n > 0) CHECK(t->max_value(x.data(), n) == ref.max_value(x.data(), n));
        }
    }
}

TEST_CASE("exact distributions do not depend on the kernel table") {
    const Graph g = random_regular(40, 4, 9);
    std::vector<Vertex> R;
    for (Vertex v = 0; v < 40; v += 3) R.push_back(v);
    const LazyOperator ref(g, &kernels::scalar_table());
    for (const auto* t : kernels::available_tables()) {
        const LazyOperator op(g, t);
        auto p = walk_distribution(op, 0, 9).p, q = walk_distribution(ref, 0, 9).p;
        CHECK(p == q);
        auto m = returning_matrices(op, R, 2, 2), mr = returning_matrices(ref, R, 2, 2);
        for (std::size_t k = 0; k < m.size(); ++k)
            for (std::size_t j = 0; j < m[k].data.size(); ++j) CHECK(m[k].data[j] == doctest::Approx(mr[k].data[j]).epsilon(1e-12));
    }
}
