#include <algorithm>
#include <cmath>

#include "hminor/strata.hpp"

namespace hminor {

CorrelationReport correlation_check(const Graph& g, const Stratification& st, int i, Vertex s, double tol) {
    if (i < 0 || i > st.i_max) throw UsageError("phase " + std::to_string(i) + " outside the stratification");
    if (s >= st.n || st.level[s] != i)
        throw UsageError("vertex " + std::to_string(s) + " is not in stratum " + std::to_string(i));
    const auto& R = st.residues[static_cast<std::size_t>(i)];
    const LazyOperator op(g);
    const auto q = returning_matrices(op, R, st.ell, i + 1);
    const std::size_t k = R.size();
    const std::size_t a = static_cast<std::size_t>(std::lower_bound(R.begin(), R.end(), s) - R.begin());
    const auto& table = op.table();

    auto next = q[static_cast<std::size_t>(i) + 1].row(a);
    auto here = q[static_cast<std::size_t>(i)].row(a);
    const double l1 = table.sum(next.data(), k);
    const double l2sq_next = table.sum_squares(next.data(), k);
    const double l2sq_here = table.sum_squares(here.data(), k);

    CorrelationReport rep;
    const DenseSymmetric& level = q[static_cast<std::size_t>(i)];
    for (std::size_t u1 = 0; u1 < k; ++u1) {
        const double p1 = next[u1] / l1;
        if (p1 == 0.0) continue;
        for (std::size_t u2 = 0; u2 < k; ++u2) {
            const double p2 = next[u2] / l1;
            if (p2 == 0.0) continue;
            rep.lhs += p1 * p2 * table.dot(level.row(u1).data(), level.row(u2).data(), k);
        }
    }
    rep.bound_norms = l2sq_next * l2sq_next / (l1 * l1 * l2sq_here);
    rep.bound_power = std::pow(static_cast<double>(st.n), -st.delta * (i + 1));
    const double worst = std::max(rep.bound_norms, rep.bound_power);
    rep.pass = rep.lhs >= worst - tol;
    return rep;
}

}  // namespace hminor
