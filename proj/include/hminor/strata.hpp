#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hminor/walks.hpp"

namespace hminor {

// ---------------------------------------------------------------- stratification

/// Strata S_0..S_imax and residues R_0..R_{imax+1}. Vertex s in R_i goes to S_i
/// when ||q[R_i],s,i+1||_2^2 >= n^(-delta i).
struct Stratification {
    std::size_t n = 0;
    double delta = 0;
    std::size_t ell = 1;
    int i_max = 0;
    std::vector<std::vector<Vertex>> strata;    ///< S_0..S_imax, sorted
    std::vector<std::vector<Vertex>> residues;  ///< R_0..R_{imax+1}, sorted
    /// Per vertex: its stratum, i_max + 1 if it was never placed, -1 if not in R_0.
    std::vector<int> level;

    static constexpr int not_in_domain = -1;
    double threshold(int i) const;   ///< n^(-delta i)
};

Stratification stratify(const Graph& g, std::span<const Vertex> R0, double delta, std::size_t ell, int i_max);

struct ClaimViolation {
    std::string claim;
    int i = 0;
    int j = 0;
    Vertex s = 0;
    double value = 0;
    double bound = 0;
};

struct StrataClaimsReport {
    std::size_t checks = 0;
    std::vector<ClaimViolation> violations;
    double min_slack_l2 = 0;   ///< bound - value, smallest seen (0 when unchecked)
    double min_slack_max = 0;
    double min_slack_mass = 0;
    bool residue_bound_applicable = false;
    bool residue_bound_holds = true;
    std::string residue_bound_note;

    bool ok() const { return violations.empty() && residue_bound_holds; }
};

/// l2, max and mass bounds on returning walks for every residue index; the R_{1/delta+3} size bound when
/// its preconditions hold for (n, delta, epsilon). Violations beyond the
/// relative tolerance are reported.
StrataClaimsReport strata_claims_check(const Graph& g, const Stratification& strat,
                                       std::optional<double> epsilon = std::nullopt, double tolerance = 1e-12);

struct CorrelationReport {
    double lhs = 0;          ///< E_{u1,u2 ~ D_{s,i}} [q_{u1} . q_{u2}]
    double bound_norms = 0;    ///< ||q^(i+1)||_2^4 / (||q^(i+1)||_1^2 ||q^(i)||_2^2)
    double bound_power = 0;    ///< n^(-delta (i+1))
    bool pass = false;
};

/// Requires s in S_i. Vectors are q[R_i],.,i and q[R_i],s,i+1.
CorrelationReport correlation_check(const Graph& g, const Stratification& strat, int i, Vertex s,
                                    double tolerance = 1e-12);

// ---------------------------------------------------------------- partition

/// Threshold record for piece extraction and partition verification.
/// Theory values follow the lemma statements; the practical profile pins
/// explicit numbers so that the tests stay meaningful at small n.
struct PartitionProfile {
    std::string name = "theory";
    double alpha = 0;                   ///< extraction floor |S'| >= alpha n
    int i_first = 1;
    int i_last = 1;
    std::size_t hop_sweep = 1;          ///< hop counts t = 1..hop_sweep
    std::optional<double> min_probability;  ///< unset: 1/(10 n^(delta(i+6)))
    double conductance_max = 0;         ///< Phi < conductance_max
    std::size_t chain_hops = 0;         ///< hop-length truncation of the projected chain (0: 8n)
    std::optional<std::size_t> reach_length;       ///< unset: 160 n^(delta(i+7)) / alpha
    std::optional<double> reach_probability;       ///< unset: alpha / n^(delta(2i+14))
    bool measure_candidates = false;    ///< also size the candidate set S'' each round

    double min_probability_at(std::size_t n, double delta, int i) const;
    std::size_t reach_length_at(std::size_t n, double delta, int i) const;
    double reach_probability_at(std::size_t n, double delta, int i) const;

    static PartitionProfile theory(std::size_t n, double epsilon, double delta, int r);
};

struct LowConductancePiece {
    std::vector<Vertex> piece;   ///< sorted
    std::size_t hops = 0;        ///< witness t_s
    double conductance = 0;
    double min_probability = 0;
};

/// First level set (t ascending, then size ascending) of the t-hop distributions
/// from s with min probability >= p_min, conductance < phi_max and size <= |S|/2.
std::optional<LowConductancePiece> find_low_conductance_piece(const ProjectedChain& chain, Vertex s,
                                                              std::size_t hop_sweep, double p_min,
                                                              double phi_max);
std::optional<LowConductancePiece> find_low_conductance_piece(const ProjectedChain& chain, Vertex s, int i,
                                                              double delta, const PartitionProfile& profile);

struct PartitionPiece {
    Vertex seed = 0;
    int phase = 0;
    std::vector<Vertex> vertices;   ///< sorted
    std::size_t hops = 0;
    double conductance = 0;
    std::size_t cut_edges = 0;      ///< E(P_s, S \ P_s) against S at extraction time
    std::size_t remaining_size = 0; ///< |S| just before extraction
    std::size_t candidates = 0;     ///< |S'| in the round that produced it
    std::optional<std::size_t> viable_candidates;   ///< |S''| when measured
};

struct PartitionResult {
    std::size_t n = 0;
    double epsilon = 0;
    double delta = 0;
    std::size_t ell = 1;
    PartitionProfile profile;
    std::vector<PartitionPiece> pieces;            ///< in extraction order
    std::vector<std::vector<Vertex>> excess;       ///< X_i for i = i_first..i_last
    std::vector<Vertex> remainder;                 ///< final S
    std::vector<int> stalled_phases;               ///< phases whose while-loop found no piece
    /// Per vertex: piece id, or -1 excess, -2 remainder.
    std::vector<int> label() const;
    std::size_t excess_size() const;
};

PartitionResult decompose(const Graph& g, double epsilon, double delta, std::size_t ell,
                          const PartitionProfile& profile);

struct PartitionBullet {
    std::string name;
    bool pass = true;
    double slack = 0;        ///< smallest (bound - value) seen; + for pass
    std::size_t checked = 0;
    std::string detail;
};

struct PartitionReport {
    std::vector<PartitionBullet> bullets;
    bool partition_ok = true;
    std::string partition_detail;
    bool ok() const;
};

PartitionReport verify_partition(const Graph& g, const PartitionResult& part);

/// Edges with one end in A and the other in B (A, B sorted, disjoint).
std::size_t count_cut_edges(const Graph& g, std::span<const Vertex> A, std::span<const Vertex> B);

}  // namespace hminor
