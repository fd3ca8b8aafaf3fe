#include <algorithm>
#include <limits>

#include "hminor/graph.hpp"
#include "hminor/kernels.hpp"

namespace hminor::kernels {

PaddedAdjacency PaddedAdjacency::from_graph(const Graph& g) {
    PaddedAdjacency a;
    a.n = g.num_vertices();
    a.slots = std::max<std::size_t>(g.degree_bound(), 1);
    a.index.resize(a.n * a.slots);
    for (std::size_t v = 0; v < a.n; ++v) {
        auto nb = g.neighbors(static_cast<Vertex>(v));
        for (std::size_t j = 0; j < a.slots; ++j)
            a.index[j * a.n + v] = j < nb.size() ? nb[j] : static_cast<std::uint32_t>(v);
    }
    return a;
}

namespace {

void lazy_apply(const PaddedAdjacency& a, const double* x, double* y) {
    const double half = 0.5;
    const double scale = 0.5 / static_cast<double>(a.slots);
    for (std::size_t v = 0; v < a.n; ++v) {
        double acc = 0.0;
        for (std::size_t j = 0; j < a.slots; ++j) acc += x[a.index[j * a.n + v]];
        y[v] = half * x[v] + scale * acc;
    }
}

void mask_multiply(double* x, const double* mask, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= mask[i];
}

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double sum_squares(const double* x, std::size_t n) { return dot(x, x, n); }

double max_value(const double* x, std::size_t n) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) best = std::max(best, x[i]);
    return best;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
    static const KernelTable table{"scalar", lazy_apply, mask_multiply, dot, sum, sum_squares, max_value};
    return table;
}

}  // namespace hminor::kernels
