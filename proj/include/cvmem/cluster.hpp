#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cvmem/errors.hpp"
#include "cvmem/graph.hpp"
#include "cvmem/state.hpp"
#include "cvmem/symplectic.hpp"

namespace cvmem {

/// Nullifier combinations of a graph, one per vertex: p_a - sum over
/// neighbors b of x_b, expressed over the graph's own 2n quadratures.
struct NullifierSet {
    GraphSpec graph;
    std::vector<QuadratureCombination> combinations;
};

inline NullifierSet nullifiers(const GraphSpec& graph) {
    std::vector<QuadratureCombination> combos;
    combos.reserve(static_cast<std::size_t>(graph.n_vertices()));
    for (int a = 1; a <= graph.n_vertices(); ++a) {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * graph.n_vertices());
        c(2 * (a - 1) + 1) = 1.0;
        std::string label = "p_" + std::to_string(a);
        for (int b : graph.neighbors(a)) {
            c(2 * (b - 1)) = -1.0;
            label += " - x_" + std::to_string(b);
        }
        combos.emplace_back(std::move(c), std::move(label));
    }
    return {graph, std::move(combos)};
}

/// Coefficient table of the four-mode linear cluster network, squeezing
/// factors stripped. Rows are the output quadratures (x_1, p_1, ..., x_4,
/// p_4) over the squeezed inputs in the same interleaved order. This table
/// is the single authoritative transcription; a sign slip anywhere makes
/// the symplectic check fail.
inline Eigen::MatrixXd linear4_network_matrix() {
    const double a = 1.0 / std::sqrt(2.0);
    const double b = 1.0 / std::sqrt(10.0);
    Eigen::MatrixXd n = Eigen::MatrixXd::Zero(8, 8);
    // x_1
    n(0, 0) = a;
    n(0, 2) = b;
    n(0, 5) = -2.0 * b;
    // p_1
    n(1, 1) = a;
    n(1, 3) = b;
    n(1, 4) = 2.0 * b;
    // x_2
    n(2, 1) = -a;
    n(2, 3) = b;
    n(2, 4) = 2.0 * b;
    // p_2
    n(3, 0) = a;
    n(3, 2) = -b;
    n(3, 5) = 2.0 * b;
    // x_3
    n(4, 2) = -2.0 * b;
    n(4, 5) = -b;
    n(4, 7) = -a;
    // p_3
    n(5, 3) = -2.0 * b;
    n(5, 4) = b;
    n(5, 6) = a;
    // x_4
    n(6, 3) = 2.0 * b;
    n(6, 4) = -b;
    n(6, 6) = a;
    // p_4
    n(7, 2) = -2.0 * b;
    n(7, 5) = -b;
    n(7, 7) = a;
    return n;
}

/// The four-mode linear cluster network as a validated transform.
inline SymplecticTransform linear4_network() {
    return SymplecticTransform(linear4_network_matrix());
}

/// Block-diagonal squeezer: per mode diag(e^{r_i}, e^{-r_i}), i.e. x is
/// antisqueezed and p squeezed.
inline SymplecticTransform squeezer_bank(const SqueezingProfile& profile) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * profile.size(), 2 * profile.size());
    for (int i = 0; i < profile.size(); ++i) {
        m(2 * i, 2 * i) = std::exp(profile[i]);
        m(2 * i + 1, 2 * i + 1) = std::exp(-profile[i]);
    }
    return SymplecticTransform(std::move(m));
}

/// Four-mode linear cluster state: squeeze the vacuum, then mix through the
/// linear network. With a uniform profile r the four nullifier variances are
/// (1/2, 3/4, 3/4, 1/2) * e^{-2r}.
inline GaussianState build_linear4_cluster(const SqueezingProfile& profile) {
    if (profile.size() != 4) {
        throw ValidationError("the linear four-mode cluster needs exactly 4 squeezing "
                              "parameters, got " +
                              std::to_string(profile.size()));
    }
    GaussianState state = vacuum_state(QuadratureOrdering::lights(4));
    state = apply(squeezer_bank(profile), state);
    return apply(linear4_network(), state);
}

/// Two-mode edge gate: p_a += x_b, p_b += x_a, x unchanged.
inline SymplecticTransform edge_gate() {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(4, 4);
    g(1, 2) = 1.0;
    g(3, 0) = 1.0;
    return SymplecticTransform(std::move(g));
}

/// Cluster state of an arbitrary graph: p-squeezed modes with one edge gate
/// per graph edge. Each vertex nullifier keeps exactly the squeezed p of its
/// own mode, so its variance is (1/4) e^{-2 r_a}.
inline GaussianState build_graph_cluster(const GraphSpec& graph,
                                         const SqueezingProfile& profile) {
    if (profile.size() != graph.n_vertices()) {
        throw ValidationError("profile covers " + std::to_string(profile.size()) +
                              " modes but the graph has " +
                              std::to_string(graph.n_vertices()) + " vertices");
    }
    const QuadratureOrdering ordering = QuadratureOrdering::lights(graph.n_vertices());
    GaussianState state = vacuum_state(ordering);
    state = apply(squeezer_bank(profile), state);
    for (auto [u, v] : graph.edges()) {
        state = apply(embed(edge_gate(), {light(u), light(v)}, ordering), state);
    }
    return state;
}

} // namespace cvmem
