#include <algorithm>
#include <cmath>

#include "hminor/strata.hpp"

namespace hminor {
namespace {

std::vector<Vertex> sorted_unique(std::span<const Vertex> in, std::size_t n) {
    std::vector<Vertex> out(in.begin(), in.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!out.empty() && out.back() >= n) throw UsageError("vertex " + std::to_string(out.back()) + " out of range");
    return out;
}

bool exceeds(double value, double bound, double tol) { return value > bound * (1.0 + tol) + tol; }
bool falls_short(double value, double bound, double tol) { return value < bound * (1.0 - tol) - tol; }

// Snapshots q[R],s,j for j = 0..j_max by running 2^j_max rounds and recording
// the vector after 2^j rounds. Independent of the matrix-squaring path.
std::vector<std::vector<double>> returning_levels(const LazyOperator& op, const std::vector<double>& mask,
                                                  std::span<const Vertex> R, Vertex s, std::size_t ell,
                                                  int j_max) {
    std::vector<std::vector<double>> levels;
    std::vector<double> x(op.size(), 0.0);
    x[s] = 1.0;
    const std::uint64_t rounds = std::uint64_t{1} << j_max;
    std::uint64_t next_snapshot = 1;
    for (std::uint64_t r = 1; r <= rounds; ++r) {
        op.apply_power(x, ell);
        op.table().mask_multiply(x.data(), mask.data(), x.size());
        if (r == next_snapshot) {
            std::vector<double> level;
            level.reserve(R.size());
            for (Vertex v : R) level.push_back(x[v]);
            levels.push_back(std::move(level));
            next_snapshot <<= 1;
        }
    }
    return levels;
}

}  // namespace

double Stratification::threshold(int i) const {
    return std::pow(static_cast<double>(n), -delta * static_cast<double>(i));
}

Stratification stratify(const Graph& g, std::span<const Vertex> R0, double delta, std::size_t ell, int i_max) {
    if (!(delta > 0.0 && delta < 1.0)) throw UsageError("delta must lie in (0, 1)");
    if (ell == 0) throw UsageError("period must be at least 1");
    if (i_max < 0) throw UsageError("i_max must be non-negative");
    Stratification st;
    st.n = g.num_vertices();
    st.delta = delta;
    st.ell = ell;
    st.i_max = i_max;
    st.level.assign(st.n, Stratification::not_in_domain);
    std::vector<Vertex> R = sorted_unique(R0, st.n);
    for (Vertex v : R) st.level[v] = i_max + 1;
    const LazyOperator op(g);
    for (int i = 0; i <= i_max; ++i) {
        st.residues.push_back(R);
        std::vector<Vertex> placed, rest;
        if (!R.empty()) {
            auto q = returning_matrices(op, R, ell, i + 1);
            const DenseSymmetric& top = q.back();
            const double bound = st.threshold(i);
            for (std::size_t a = 0; a < R.size(); ++a) {
                auto row = top.row(a);
                if (op.table().sum_squares(row.data(), row.size()) >= bound) {
                    placed.push_back(R[a]);
                    st.level[R[a]] = i;
                } else {
                    rest.push_back(R[a]);
                }
            }
        }
        st.strata.push_back(std::move(placed));
        R = std::move(rest);
    }
    st.residues.push_back(std::move(R));
    return st;
}

StrataClaimsReport strata_claims_check(const Graph& g, const Stratification& st, std::optional<double> epsilon,
                                       double tol) {
    StrataClaimsReport rep;
    const LazyOperator op(g);
    const double n = static_cast<double>(st.n);
    const double delta = st.delta;
    bool seen_l2 = false, seen_max = false, seen_mass = false;
    auto note_slack = [](double& slot, bool& seen, double slack) {
        slot = seen ? std::min(slot, slack) : slack;
        seen = true;
    };
    for (int i = 0; i <= st.i_max + 1; ++i) {
        const auto& R = st.residues[static_cast<std::size_t>(i)];
        if (R.empty()) continue;
        std::vector<double> mask(st.n, 0.0);
        for (Vertex v : R) mask[v] = 1.0;
        const bool is_stratum = i <= st.i_max;
        for (Vertex s : R) {
            const int j_top = i + 1;
            auto levels = returning_levels(op, mask, R, s, st.ell, j_top);
            for (int j = 1; j <= i; ++j) {
                const auto& q = levels[static_cast<std::size_t>(j)];
                double value = op.table().sum_squares(q.data(), q.size());
                double bound = std::pow(n, -delta * (j - 1));
                ++rep.checks;
                note_slack(rep.min_slack_l2, seen_l2, bound - value);
                if (exceeds(value, bound, tol)) rep.violations.push_back({"l2", i, j, s, value, bound});
            }
            for (int j = 2; j <= i + 1; ++j) {
                const auto& q = levels[static_cast<std::size_t>(j)];
                double value = q.empty() ? 0.0 : *std::max_element(q.begin(), q.end());
                double bound = std::pow(n, -delta * (j - 2));
                ++rep.checks;
                note_slack(rep.min_slack_max, seen_max, bound - value);
                if (exceeds(value, bound, tol)) rep.violations.push_back({"max", i, j, s, value, bound});
            }
            if (is_stratum && st.level[s] == i) {
                const auto& q = levels[static_cast<std::size_t>(i + 1)];
                double value = op.table().sum(q.data(), q.size());
                double bound = std::pow(n, -delta);
                ++rep.checks;
                note_slack(rep.min_slack_mass, seen_mass, value - bound);
                if (falls_short(value, bound, tol)) rep.violations.push_back({"mass", i, i + 1, s, value, bound});
            }
        }
    }

    // Residue bound: needs 1/delta integral, the small-delta inequality, and
    // epsilon above both the cutoff and the derived lower bound.
    const double inv = 1.0 / delta;
    const double inv_round = std::round(inv);
    std::string why;
    if (!epsilon) why = "no epsilon supplied";
    else if (std::abs(inv - inv_round) > 1e-9) why = "1/delta is not an integer";
    else if (!(delta / std::exp(inv) < 2.0 * delta / std::pow(2.0, inv + 4.0)))
        why = "delta/exp(1/delta) < 2 delta/2^(1/delta+4) fails at delta=" + std::to_string(delta);
    else if (*epsilon < std::pow(n, -delta / std::exp(2.0 * inv)))
        why = "epsilon below the cutoff";
    else if (*epsilon < std::log(n) * std::pow(n, -2.0 * delta / std::pow(2.0, inv + 4.0)))
        why = "epsilon below (log n) n^(-2 delta/2^(1/delta+4))";
    else if (st.i_max < static_cast<int>(inv_round) + 2)
        why = "i_max below 1/delta + 2";
    if (why.empty()) {
        rep.residue_bound_applicable = true;
        const auto idx = static_cast<std::size_t>(inv_round) + 3;
        const double size = static_cast<double>(st.residues[idx].size());
        const double bound = *epsilon * n / std::log(n);
        rep.residue_bound_holds = size <= bound;
        rep.residue_bound_note = "|R_" + std::to_string(idx) + "| = " + std::to_string(st.residues[idx].size()) +
                           " vs bound " + std::to_string(bound);
    } else {
        rep.residue_bound_note = "not applicable: " + why;
    }
    return rep;
}

}  // namespace hminor
