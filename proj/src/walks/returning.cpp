#include <algorithm>
#include <cmath>

#include "hminor/walks.hpp"

namespace hminor {
namespace {

std::vector<Vertex> sorted_set(std::span<const Vertex> R, std::size_t n) {
    std::vector<Vertex> out(R.begin(), R.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!out.empty() && out.back() >= n) throw UsageError("set member " + std::to_string(out.back()) + " out of range");
    return out;
}

void check_phase(int i, std::size_t ell) {
    if (i < 0) throw UsageError("phase must be non-negative");
    if (ell == 0) throw UsageError("period must be at least 1");
    if (i > 40) throw UsageError("phase " + std::to_string(i) + " too large for exact evaluation");
}

}  // namespace

double ReturningVec::at(Vertex u) const {
    auto it = std::lower_bound(support.begin(), support.end(), u);
    if (it == support.end() || *it != u) return 0.0;
    return values[static_cast<std::size_t>(it - support.begin())];
}

double ReturningVec::l1() const { return kernels::sum(values); }
double ReturningVec::l2_squared() const { return kernels::sum_squares(values); }
double ReturningVec::linf() const { return values.empty() ? 0.0 : kernels::max_value(values); }

ReturningVec returning_vector(const LazyOperator& op, std::span<const Vertex> R, Vertex s, int i, std::size_t ell) {
    check_phase(i, ell);
    ReturningVec out;
    out.source = s;
    out.phase = i;
    out.period = ell;
    out.support = sorted_set(R, op.size());
    if (!std::binary_search(out.support.begin(), out.support.end(), s))
        throw UsageError("source " + std::to_string(s) + " is not in the returning set");
    std::vector<double> mask(op.size(), 0.0);
    for (Vertex v : out.support) mask[v] = 1.0;
    std::vector<double> x(op.size(), 0.0);
    x[s] = 1.0;
    const std::uint64_t rounds = std::uint64_t{1} << i;
    for (std::uint64_t r = 0; r < rounds; ++r) {
        op.apply_power(x, ell);
        op.table().mask_multiply(x.data(), mask.data(), x.size());
    }
    out.values.reserve(out.support.size());
    for (Vertex v : out.support) out.values.push_back(x[v]);
    return out;
}

ReturningVec returning_vector(const Graph& g, std::span<const Vertex> R, Vertex s, int i, std::size_t ell) {
    return returning_vector(LazyOperator(g), R, s, i, ell);
}

ProductIdentity returning_product_identity(const LazyOperator& op, std::span<const Vertex> R, Vertex s, Vertex u,
                                           int i, std::size_t ell) {
    const ReturningVec qs = returning_vector(op, R, s, i, ell);
    const ReturningVec qu = returning_vector(op, R, u, i, ell);
    return {returning_vector(op, R, s, i + 1, ell).at(u), kernels::dot(qs.values, qu.values)};
}

MassBound returning_mass_lower_bound(const LazyOperator& op, std::span<const Vertex> R, int i, std::size_t ell) {
    const auto members = sorted_set(R, op.size());
    if (members.empty()) throw UsageError("returning set must be nonempty");
    double total = 0;
    for (Vertex s : members) total += returning_vector(op, members, s, i, ell).l1();
    const double frac = static_cast<double>(members.size()) / static_cast<double>(op.size());
    return {total / static_cast<double>(members.size()), std::pow(frac, std::ldexp(1.0, i))};
}

ReturningSample returning_walk_sample(const Graph& g, std::span<const Vertex> R, Vertex s, int i, std::size_t ell,
                                      RandomStream& rng, QueryLedger& ledger) {
    check_phase(i, ell);
    const auto members = sorted_set(R, g.num_vertices());
    if (!std::binary_search(members.begin(), members.end(), s))
        throw UsageError("source " + std::to_string(s) + " is not in the returning set");
    ReturningSample out;
    out.walk = lazy_walk(g, s, ell << i, rng, ledger);
    out.returning = true;
    for (std::size_t t = ell; t < out.walk.vertices.size(); t += ell)
        if (!std::binary_search(members.begin(), members.end(), out.walk.vertices[t])) {
            out.returning = false;
            break;
        }
    return out;
}

std::vector<DenseSymmetric> returning_matrices(const LazyOperator& op, std::span<const Vertex> R, std::size_t ell,
                                               int i_max) {
    check_phase(std::max(i_max, 0), ell);
    const auto members = sorted_set(R, op.size());
    const std::size_t k = members.size();
    std::vector<DenseSymmetric> out;
    if (i_max < 0) return out;
    DenseSymmetric base{k, std::vector<double>(k * k, 0.0)};
    std::vector<double> x(op.size());
    for (std::size_t b = 0; b < k; ++b) {
        std::fill(x.begin(), x.end(), 0.0);
        x[members[b]] = 1.0;
        op.apply_power(x, ell);
        for (std::size_t a = 0; a < k; ++a) base.data[a * k + b] = x[members[a]];
    }
    // M is symmetric, so the restricted matrix is too; enforce it exactly.
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            double v = 0.5 * (base.data[a * k + b] + base.data[b * k + a]);
            base.data[a * k + b] = base.data[b * k + a] = v;
        }
    out.push_back(std::move(base));
    const auto& table = op.table();
    for (int i = 1; i <= i_max; ++i) {
        const DenseSymmetric& prev = out.back();
        DenseSymmetric next{k, std::vector<double>(k * k, 0.0)};
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a; b < k; ++b) {
                double v = table.dot(prev.data.data() + a * k, prev.data.data() + b * k, k);
                next.data[a * k + b] = next.data[b * k + a] = v;
            }
        out.push_back(std::move(next));
    }
    return out;
}

}  // namespace hminor
