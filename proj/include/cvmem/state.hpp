#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cvmem/errors.hpp"
#include "cvmem/modes.hpp"
#include "cvmem/symplectic.hpp"

namespace cvmem {

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kUncertaintyTol = 1e-9;

/// A real coefficient vector defining a linear combination of quadratures,
/// e.g. a nullifier p_1 - x_2.
class QuadratureCombination {
  public:
    QuadratureCombination(Eigen::VectorXd coefficients, std::string label)
        : coefficients_(std::move(coefficients)), label_(std::move(label)) {
        if (coefficients_.size() == 0 || coefficients_.isZero(0.0)) {
            throw ValidationError("quadrature combination '" + label_ +
                                  "' needs at least one nonzero coefficient");
        }
        if (!coefficients_.allFinite()) {
            throw ValidationError("quadrature combination '" + label_ +
                                  "' has non-finite coefficients");
        }
    }

    const Eigen::VectorXd& coefficients() const { return coefficients_; }
    const std::string& label() const { return label_; }
    int dim() const { return static_cast<int>(coefficients_.size()); }

  private:
    Eigen::VectorXd coefficients_;
    std::string label_;
};

/// The combination picking out the x quadrature of one mode.
inline QuadratureCombination x_of(const QuadratureOrdering& ordering, const ModeLabel& label) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(ordering.dim());
    c(ordering.x_index(label)) = 1.0;
    return {std::move(c), "x_" + to_string(label)};
}

/// The combination picking out the p quadrature of one mode.
inline QuadratureCombination p_of(const QuadratureOrdering& ordering, const ModeLabel& label) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(ordering.dim());
    c(ordering.p_index(label)) = 1.0;
    return {std::move(c), "p_" + to_string(label)};
}

/// Re-indexes a combination defined over `targets` (mode k of the small
/// ordering = targets[k]) into the full ordering, zero elsewhere.
inline QuadratureCombination lift(const QuadratureCombination& combination,
                                  const std::vector<ModeLabel>& targets,
                                  const QuadratureOrdering& ordering) {
    if (combination.dim() != 2 * static_cast<int>(targets.size())) {
        throw ShapeError("lift: combination covers " + std::to_string(combination.dim() / 2) +
                         " modes but " + std::to_string(targets.size()) + " targets given");
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(ordering.dim());
    for (std::size_t k = 0; k < targets.size(); ++k) {
        c(ordering.x_index(targets[k])) = combination.coefficients()(2 * static_cast<int>(k));
        c(ordering.p_index(targets[k])) = combination.coefficients()(2 * static_cast<int>(k) + 1);
    }
    return {std::move(c), combination.label()};
}

/// Gaussian state of a set of labeled modes: mean vector plus covariance
/// matrix, both indexed against the state's quadrature ordering.
///
/// Construction enforces symmetry of the covariance and the uncertainty
/// relation: cov + (i/4) J must be positive semidefinite. The eigenvalue
/// margin scales with the covariance norm so that strongly squeezed states
/// remain representable.
class GaussianState {
  public:
    GaussianState(QuadratureOrdering ordering, Eigen::VectorXd mean, Eigen::MatrixXd cov)
        : ordering_(std::move(ordering)), mean_(std::move(mean)), cov_(std::move(cov)) {
        const int d = ordering_.dim();
        if (mean_.size() != d || cov_.rows() != d || cov_.cols() != d) {
            throw ShapeError("state over " + std::to_string(ordering_.n_modes()) +
                             " modes needs mean/cov of dimension " + std::to_string(d));
        }
        if (!mean_.allFinite() || !cov_.allFinite()) {
            throw ValidationError("state mean/covariance must be finite");
        }
        const double asymmetry = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
        if (asymmetry > kSymmetryTol) {
            throw ValidationError("covariance asymmetry " + std::to_string(asymmetry) +
                                  " exceeds tolerance");
        }
        const double margin = uncertainty_margin();
        const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
        if (margin < -kUncertaintyTol * scale) {
            throw ValidationError("state violates the uncertainty relation: eigenvalue margin " +
                                  std::to_string(margin));
        }
    }

    const QuadratureOrdering& ordering() const { return ordering_; }
    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& cov() const { return cov_; }
    int n_modes() const { return ordering_.n_modes(); }
    int dim() const { return ordering_.dim(); }

    /// Smallest eigenvalue of the Hermitian matrix cov + (i/4) J; the state
    /// is physical iff this is >= 0 (vacuum saturates it at 0).
    double uncertainty_margin() const {
        const int d = dim();
        const Eigen::MatrixXd j = symplectic_form(n_modes());
        Eigen::MatrixXcd m = cov_.cast<std::complex<double>>();
        m += std::complex<double>(0.0, 0.25) * j.cast<std::complex<double>>();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
        if (solver.info() != Eigen::Success) {
            throw ValidationError("eigenvalue computation failed on a " + std::to_string(d) +
                                  "-dimensional covariance");
        }
        return solver.eigenvalues().minCoeff();
    }

  private:
    QuadratureOrdering ordering_;
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
};

/// Ground state: zero mean, covariance (1/4) * identity.
inline GaussianState vacuum_state(const QuadratureOrdering& ordering) {
    const int d = ordering.dim();
    return GaussianState(ordering, Eigen::VectorXd::Zero(d),
                         0.25 * Eigen::MatrixXd::Identity(d, d));
}

/// Propagates a state through a symplectic map: mean -> S mean,
/// cov -> S cov S^T (resymmetrized to kill rounding skew).
inline GaussianState apply(const SymplecticTransform& s, const GaussianState& state) {
    if (s.dim() != state.dim()) {
        throw ShapeError("transform dimension " + std::to_string(s.dim()) +
                         " does not match state dimension " + std::to_string(state.dim()));
    }
    Eigen::MatrixXd cov = s.matrix() * state.cov() * s.matrix().transpose();
    cov = 0.5 * (cov + cov.transpose()).eval();
    return GaussianState(state.ordering(), s.matrix() * state.mean(), std::move(cov));
}

/// Adds an offset to the mean vector; the covariance is untouched.
inline GaussianState displaced(const GaussianState& state, const Eigen::VectorXd& offset) {
    if (offset.size() != state.dim()) {
        throw ShapeError("displacement length " + std::to_string(offset.size()) +
                         " does not match state dimension " + std::to_string(state.dim()));
    }
    return GaussianState(state.ordering(), state.mean() + offset, state.cov());
}

/// Marginal state of a subset of modes (rows/columns of mean and cov).
inline GaussianState reduced(const GaussianState& state, const std::vector<ModeLabel>& keep) {
    if (keep.empty()) {
        throw ConfigError("reduced: at least one mode must be kept");
    }
    const int d = 2 * static_cast<int>(keep.size());
    Eigen::VectorXd mean(d);
    Eigen::MatrixXd cov(d, d);
    std::vector<int> idx(static_cast<std::size_t>(d));
    for (std::size_t k = 0; k < keep.size(); ++k) {
        idx[2 * k] = state.ordering().x_index(keep[k]);
        idx[2 * k + 1] = state.ordering().p_index(keep[k]);
    }
    for (int a = 0; a < d; ++a) {
        mean(a) = state.mean()(idx[static_cast<std::size_t>(a)]);
        for (int b = 0; b < d; ++b) {
            cov(a, b) = state.cov()(idx[static_cast<std::size_t>(a)],
                                    idx[static_cast<std::size_t>(b)]);
        }
    }
    return GaussianState(QuadratureOrdering(keep), std::move(mean), std::move(cov));
}

/// Variance of a quadrature combination: u^T cov u. Means never enter;
/// variances are translation invariant.
inline double variance(const GaussianState& state, const QuadratureCombination& u) {
    if (u.dim() != state.dim()) {
        throw ShapeError("combination length " + std::to_string(u.dim()) +
                         " does not match state dimension " + std::to_string(state.dim()));
    }
    return u.coefficients().dot(state.cov() * u.coefficients());
}

/// The scalar c in [u, v] = i c, i.e. (1/2) u^T J v under [x, p] = i/2.
inline double commutator_coefficient(const QuadratureCombination& u,
                                     const QuadratureCombination& v) {
    if (u.dim() != v.dim()) {
        throw ShapeError("commutator of combinations with lengths " + std::to_string(u.dim()) +
                         " and " + std::to_string(v.dim()));
    }
    const Eigen::MatrixXd j = symplectic_form(u.dim() / 2);
    return 0.5 * u.coefficients().dot(j * v.coefficients());
}

} // namespace cvmem
