#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cvmem/errors.hpp"
#include "cvmem/modes.hpp"

namespace cvmem {

/// Residual tolerance applied when a transform is constructed.
inline constexpr double kSymplecticTol = 1e-10;

/// The symplectic form J: block diagonal with [[0, 1], [-1, 0]] per mode.
///
/// Commutators follow [R_i, R_j] = (i/2) J_ij, i.e. [x, p] = i/2, which puts
/// the vacuum variance of every quadrature at 1/4.
inline Eigen::MatrixXd symplectic_form(int n_modes) {
    if (n_modes < 1) {
        throw ShapeError("symplectic form needs at least one mode");
    }
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        j(2 * k, 2 * k + 1) = 1.0;
        j(2 * k + 1, 2 * k) = -1.0;
    }
    return j;
}

struct SymplecticCheck {
    bool ok = false;
    double max_residual = 0.0;
};

/// Evaluates max |S J S^T - J| and compares it against `tol`.
inline SymplecticCheck check_symplectic(const Eigen::MatrixXd& s, double tol = kSymplecticTol) {
    if (s.rows() != s.cols()) {
        throw ShapeError("symplectic check requires a square matrix");
    }
    if (s.rows() % 2 != 0 || s.rows() == 0) {
        throw ShapeError("symplectic check requires an even dimension, got " +
                         std::to_string(s.rows()));
    }
    const Eigen::MatrixXd j = symplectic_form(static_cast<int>(s.rows()) / 2);
    const double residual = (s * j * s.transpose() - j).cwiseAbs().maxCoeff();
    return {residual <= tol, residual};
}

/// A real linear map on the quadrature vector, validated against the
/// symplectic form when constructed.
class SymplecticTransform {
  public:
    explicit SymplecticTransform(Eigen::MatrixXd matrix, double tol = kSymplecticTol)
        : matrix_(std::move(matrix)) {
        const SymplecticCheck check = check_symplectic(matrix_, tol);
        if (!check.ok) {
            throw ValidationError("matrix is not symplectic: residual " +
                                  std::to_string(check.max_residual) + " exceeds tolerance");
        }
    }

    static SymplecticTransform identity(int n_modes) {
        return SymplecticTransform(Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
    }

    const Eigen::MatrixXd& matrix() const { return matrix_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }
    int n_modes() const { return dim() / 2; }

    /// Composition: (a * b) applies b first, then a.
    friend SymplecticTransform operator*(const SymplecticTransform& a,
                                         const SymplecticTransform& b) {
        if (a.dim() != b.dim()) {
            throw ShapeError("cannot compose transforms of dimensions " +
                             std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
        }
        return SymplecticTransform(a.matrix_ * b.matrix_);
    }

  private:
    Eigen::MatrixXd matrix_;
};

/// Places a small transform onto the given modes of a larger ordering,
/// acting as the identity everywhere else.
///
/// Mode k of `small` acts on `targets[k]`; targets must be distinct members
/// of `ordering`.
inline SymplecticTransform embed(const SymplecticTransform& small,
                                 const std::vector<ModeLabel>& targets,
                                 const QuadratureOrdering& ordering) {
    if (static_cast<int>(targets.size()) != small.n_modes()) {
        throw ShapeError("embed: transform covers " + std::to_string(small.n_modes()) +
                         " modes but " + std::to_string(targets.size()) + " targets given");
    }
    std::vector<int> global(2 * targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) {
        global[2 * k] = ordering.x_index(targets[k]);
        global[2 * k + 1] = ordering.p_index(targets[k]);
    }
    for (std::size_t a = 0; a < targets.size(); ++a) {
        for (std::size_t b = a + 1; b < targets.size(); ++b) {
            if (targets[a] == targets[b]) {
                throw ValidationError("embed: duplicate target mode " + to_string(targets[a]));
            }
        }
    }
    Eigen::MatrixXd full = Eigen::MatrixXd::Identity(ordering.dim(), ordering.dim());
    for (std::size_t a = 0; a < global.size(); ++a) {
        for (std::size_t b = 0; b < global.size(); ++b) {
            full(global[a], global[b]) =
                small.matrix()(static_cast<int>(a), static_cast<int>(b));
        }
    }
    return SymplecticTransform(std::move(full));
}

/// Relabels mode positions: mode at position k of `ordering` moves to
/// position `permutation[k]`. Useful for channel-permutation checks.
inline SymplecticTransform mode_permutation(const std::vector<int>& permutation) {
    const int n = static_cast<int>(permutation.size());
    std::vector<bool> seen(permutation.size(), false);
    for (int v : permutation) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
            throw ValidationError("mode_permutation: not a permutation of 0..n-1");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        m(2 * permutation[static_cast<std::size_t>(k)], 2 * k) = 1.0;
        m(2 * permutation[static_cast<std::size_t>(k)] + 1, 2 * k + 1) = 1.0;
    }
    return SymplecticTransform(std::move(m));
}

} // namespace cvmem
