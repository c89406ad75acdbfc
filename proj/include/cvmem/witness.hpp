#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "cvmem/cluster.hpp"
#include "cvmem/errors.hpp"
#include "cvmem/state.hpp"

namespace cvmem {

/// A split of the vertices 1..n into two non-empty groups.
struct Bipartition {
    std::vector<int> side_a;
    std::vector<int> side_b;

    /// Builds {members} | {rest of 1..n}.
    static Bipartition against_rest(std::vector<int> members, int n_vertices) {
        std::sort(members.begin(), members.end());
        Bipartition p;
        p.side_a = members;
        for (int v = 1; v <= n_vertices; ++v) {
            if (!std::binary_search(members.begin(), members.end(), v)) {
                p.side_b.push_back(v);
            }
        }
        p.validate(n_vertices);
        return p;
    }

    /// Both sides together must cover 1..n exactly once.
    void validate(int n_vertices) const {
        if (side_a.empty() || side_b.empty()) {
            throw ValidationError("a bipartition needs two non-empty sides");
        }
        std::vector<bool> seen(static_cast<std::size_t>(n_vertices) + 1, false);
        for (const std::vector<int>* side : {&side_a, &side_b}) {
            for (int v : *side) {
                if (v < 1 || v > n_vertices || seen[static_cast<std::size_t>(v)]) {
                    throw ValidationError("bipartition " + label() +
                                          " does not split vertices 1.." +
                                          std::to_string(n_vertices));
                }
                seen[static_cast<std::size_t>(v)] = true;
            }
        }
        for (int v = 1; v <= n_vertices; ++v) {
            if (!seen[static_cast<std::size_t>(v)]) {
                throw ValidationError("bipartition " + label() + " misses vertex " +
                                      std::to_string(v));
            }
        }
    }

    std::string label() const {
        const auto join = [](const std::vector<int>& side) {
            std::string out;
            for (std::size_t i = 0; i < side.size(); ++i) {
                out += (i == 0 ? "" : ",") + std::to_string(side[i]);
            }
            return out;
        };
        return "{" + join(side_a) + "}|{" + join(side_b) + "}";
    }
};

struct WitnessEntry {
    Bipartition partition;
    double bound = 0.0;
    bool witnessed = false;
};

struct PairWitness {
    int vertex_a = 0;
    int vertex_b = 0;
    double variance_sum = 0.0;
    std::vector<WitnessEntry> entries;
};

struct EntanglementReport {
    std::vector<PairWitness> pairs;

    bool any_witnessed() const {
        for (const PairWitness& pw : pairs) {
            for (const WitnessEntry& e : pw.entries) {
                if (e.witnessed) {
                    return true;
                }
            }
        }
        return false;
    }

    /// True when every pair is flagged by at least one of its separating
    /// bipartitions. Splits that keep both vertices on one side have a zero
    /// bound and can never witness.
    bool all_pairs_witnessed() const {
        for (const PairWitness& pw : pairs) {
            bool found = false;
            for (const WitnessEntry& e : pw.entries) {
                found = found || e.witnessed;
            }
            if (!found) {
                return false;
            }
        }
        return !pairs.empty();
    }
};

namespace detail {

/// Per-vertex contribution to the commutator of two combinations:
/// c_j = (1/2) (u_x[j] v_p[j] - u_p[j] v_x[j]), so [u, v] = i sum_j c_j.
inline double commutator_share(const QuadratureCombination& u, const QuadratureCombination& v,
                               int vertex) {
    const int x = 2 * (vertex - 1);
    const int p = x + 1;
    if (vertex < 1 || p >= u.dim() || u.dim() != v.dim()) {
        throw ShapeError("vertex " + std::to_string(vertex) +
                         " outside the combinations' mode range");
    }
    return 0.5 * (u.coefficients()(x) * v.coefficients()(p) -
                  u.coefficients()(p) * v.coefficients()(x));
}

} // namespace detail

/// Separability bound for a combination pair across a bipartition under the
/// 1/4-vacuum convention: |sum over side A of c_j| + |sum over side B of
/// c_j| with c_j the per-vertex commutator share. Any state separable across
/// the split satisfies V(u) + V(v) >= bound.
inline double witness_bound(const QuadratureCombination& u, const QuadratureCombination& v,
                            const Bipartition& partition) {
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (int j : partition.side_a) {
        sum_a += detail::commutator_share(u, v, j);
    }
    for (int j : partition.side_b) {
        sum_b += detail::commutator_share(u, v, j);
    }
    return std::abs(sum_a) + std::abs(sum_b);
}

/// Evaluates V(u) + V(v) for the nullifier pair of every graph edge against
/// the separability bound of each listed bipartition. A pair is flagged as
/// witnessed when the variance sum falls strictly below the bound.
inline EntanglementReport entanglement_report(const GaussianState& state,
                                              const NullifierSet& nullifiers,
                                              const std::vector<Bipartition>& bipartitions) {
    const int n = nullifiers.graph.n_vertices();
    if (state.n_modes() != n) {
        throw ShapeError("witness report needs a state over the graph's " + std::to_string(n) +
                         " modes, got " + std::to_string(state.n_modes()));
    }
    EntanglementReport report;
    for (const Bipartition& partition : bipartitions) {
        partition.validate(n);
    }
    for (auto [a, b] : nullifiers.graph.edges()) {
        const QuadratureCombination& u =
            nullifiers.combinations[static_cast<std::size_t>(a - 1)];
        const QuadratureCombination& v =
            nullifiers.combinations[static_cast<std::size_t>(b - 1)];
        PairWitness pw;
        pw.vertex_a = a;
        pw.vertex_b = b;
        pw.variance_sum = variance(state, u) + variance(state, v);
        for (const Bipartition& partition : bipartitions) {
            const double bound = witness_bound(u, v, partition);
            pw.entries.push_back(
                {partition, bound, bound > 0.0 && pw.variance_sum < bound});
        }
        report.pairs.push_back(std::move(pw));
    }
    return report;
}

} // namespace cvmem
