#include <algorithm>
#include <cmath>
#include <numeric>

#include "hminor/walks.hpp"

namespace hminor {

LSCurve ls_curve(std::span<const Vertex> members, std::span<const double> probability) {
    if (members.size() != probability.size()) throw UsageError("LS curve: members and probabilities differ in size");
    const std::size_t k = members.size();
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (probability[a] != probability[b]) return probability[a] > probability[b];
        return members[a] < members[b];
    });
    LSCurve c;
    c.order.reserve(k);
    c.sorted_probability.reserve(k);
    c.values.assign(k + 1, 0.0);
    const double uniform = k ? 1.0 / static_cast<double>(k) : 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        c.order.push_back(members[idx[j]]);
        c.sorted_probability.push_back(probability[idx[j]]);
        c.values[j + 1] = c.values[j] + (probability[idx[j]] - uniform);
    }
    return c;
}

LSCurve ls_curve(const ProjectedChain& chain, Vertex s, std::size_t t) {
    return ls_curve(chain.members, hop_distribution(chain, s, t));
}

double LSCurve::slope(std::size_t k) const {
    return sorted_probability.at(k - 1) - 1.0 / static_cast<double>(size());
}

double LSCurve::at(double x) const {
    const double n = static_cast<double>(size());
    x = std::clamp(x, 0.0, n);
    const auto k = static_cast<std::size_t>(std::floor(x));
    if (k >= size()) return values.back();
    return values[k] + (x - static_cast<double>(k)) * slope(k + 1);
}

std::vector<Vertex> LSCurve::level_set(std::size_t k) const {
    return {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(std::min(k, order.size()))};
}

LSLemmaReport ls_lemma_check(const ProjectedChain& chain, Vertex s, std::size_t t, std::size_t k, double tolerance) {
    if (t == 0) throw UsageError("LS lemma check needs t >= 1");
    const std::size_t size = chain.size();
    if (k > size) throw UsageError("LS lemma check: k exceeds |S|");
    const LSCurve now = ls_curve(chain, s, t);
    const LSCurve before = ls_curve(chain, s, t - 1);
    LSLemmaReport r;
    r.lhs = now.values[k];
    const std::size_t m = std::min(k, size - k);
    if (m > 0) r.phi = conductance(chain, now.level_set(k));
    const double spread = 2.0 * static_cast<double>(m) * r.phi;
    const double x = static_cast<double>(k);
    r.rhs = 0.5 * (before.at(x - spread) + before.at(x + spread));
    r.slack = r.rhs - r.lhs;
    r.pass = r.slack >= -tolerance;
    return r;
}

}  // namespace hminor
