#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace hminor {
class Graph;
}

namespace hminor::kernels {

/// Padded adjacency for the lazy-walk operator.
///
/// Slot-major layout: slot j of vertex v lives at index j * n + v. Empty slots
/// point back at v itself, so a move along an empty slot is a stay. A graph
/// with d = 0 is stored with a single self slot.
struct PaddedAdjacency {
    std::size_t n = 0;
    std::size_t slots = 0;
    std::vector<std::uint32_t> index;

    static PaddedAdjacency from_graph(const Graph& g);
};

/// One implementation of the dense vector primitives.
///
/// lazy_apply and mask_multiply are elementwise and must agree bit-for-bit
/// across implementations. The reductions may differ by rounding only.
struct KernelTable {
    std::string_view name;
    /// y = M x for the lazy walk: y[v] = x[v]/2 + (1/(2 slots)) * sum_j x[slot_j(v)].
    void (*lazy_apply)(const PaddedAdjacency& a, const double* x, double* y);
    /// x[v] *= mask[v]
    void (*mask_multiply)(double* x, const double* mask, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    double (*sum_squares)(const double* x, std::size_t n);
    double (*max_value)(const double* x, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
/// nullptr when the AVX2 variant is not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_table() noexcept;
/// Selected once at first use: AVX2 when available, unless HMINOR_KERNELS=scalar.
const KernelTable& active() noexcept;
/// Every implementation usable on this machine, scalar first.
std::vector<const KernelTable*> available_tables();

inline double dot(std::span<const double> x, std::span<const double> y) {
    return active().dot(x.data(), y.data(), x.size());
}
inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }
inline double sum_squares(std::span<const double> x) { return active().sum_squares(x.data(), x.size()); }
inline double max_value(std::span<const double> x) { return active().max_value(x.data(), x.size()); }

}  // namespace hminor::kernels
