#pragma once

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cvmem/graph.hpp"
#include "cvmem/modes.hpp"
#include "cvmem/state.hpp"
#include "cvmem/symplectic.hpp"

namespace cvmem {

/// Generators for randomized property checks. All draw from a caller-owned
/// engine so runs are reproducible from a single seed.

inline SymplecticTransform random_single_mode(std::mt19937& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> strength(-0.6, 0.6);
    std::uniform_int_distribution<int> pick(0, 2);
    Eigen::MatrixXd m(2, 2);
    switch (pick(rng)) {
    case 0: { // phase rotation
        const double t = angle(rng);
        m << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
        break;
    }
    case 1: { // squeezer
        const double a = strength(rng);
        m << std::exp(a), 0.0, 0.0, std::exp(-a);
        break;
    }
    default: { // shear
        const double g = strength(rng);
        m << 1.0, 0.0, g, 1.0;
        break;
    }
    }
    return SymplecticTransform(std::move(m));
}

/// Beam-splitter-type mixer acting identically on x and p of two modes.
inline SymplecticTransform random_two_mode_mixer(std::mt19937& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    const double theta = angle(rng);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Eigen::MatrixXd m(4, 4);
    m << c, 0.0, s, 0.0, //
        0.0, c, 0.0, s,  //
        -s, 0.0, c, 0.0, //
        0.0, -s, 0.0, c;
    return SymplecticTransform(std::move(m));
}

/// Random symplectic transform over an ordering, composed from a few local
/// operations on randomly chosen modes.
inline SymplecticTransform random_symplectic(const QuadratureOrdering& ordering,
                                             std::mt19937& rng, int depth = 6) {
    std::uniform_int_distribution<int> pick_mode(0, ordering.n_modes() - 1);
    SymplecticTransform total = SymplecticTransform::identity(ordering.n_modes());
    for (int step = 0; step < depth; ++step) {
        const ModeLabel a = ordering.modes()[static_cast<std::size_t>(pick_mode(rng))];
        if (ordering.n_modes() >= 2 && step % 2 == 1) {
            ModeLabel b = a;
            while (b == a) {
                b = ordering.modes()[static_cast<std::size_t>(pick_mode(rng))];
            }
            total = embed(random_two_mode_mixer(rng), {a, b}, ordering) * total;
        } else {
            total = embed(random_single_mode(rng), {a}, ordering) * total;
        }
    }
    return total;
}

/// Random physical state: vacuum pushed through a random symplectic map and
/// optionally displaced.
inline GaussianState random_state(const QuadratureOrdering& ordering, std::mt19937& rng,
                                  bool displace = true) {
    GaussianState state = apply(random_symplectic(ordering, rng), vacuum_state(ordering));
    if (displace) {
        std::uniform_real_distribution<double> shift(-2.0, 2.0);
        Eigen::VectorXd offset(ordering.dim());
        for (int i = 0; i < offset.size(); ++i) {
            offset(i) = shift(rng);
        }
        state = displaced(state, offset);
    }
    return state;
}

inline QuadratureCombination random_combination(int dim, std::mt19937& rng) {
    std::uniform_real_distribution<double> coeff(-1.5, 1.5);
    Eigen::VectorXd c(dim);
    do {
        for (int i = 0; i < dim; ++i) {
            c(i) = coeff(rng);
        }
    } while (c.isZero(0.0));
    return {std::move(c), "random"};
}

inline GraphSpec random_graph(std::mt19937& rng, int max_vertices = 7) {
    std::uniform_int_distribution<int> size(1, max_vertices);
    std::bernoulli_distribution keep(0.4);
    const int n = size(rng);
    std::vector<std::pair<int, int>> edges;
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            if (keep(rng)) {
                edges.emplace_back(a, b);
            }
        }
    }
    return GraphSpec(n, std::move(edges));
}

} // namespace cvmem
