#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cvmem/errors.hpp"
#include "cvmem/state.hpp"

namespace cvmem {

/// Heisenberg-picture variance evaluator, independent of covariance
/// propagation.
///
/// Each final quadrature is expanded as an explicit coefficient vector over
/// the initial quadratures (the composed transform chain applied to unit
/// vectors). For a combination u the variance is sum_k w_k^2 * var0_k with
/// w = T^T u, valid because the initial quadratures are independent.
///
/// The expansion stays accurate under extreme squeezing: coefficients cancel
/// before they are squared, so no large-entry covariance is ever formed.
class ModeExpansion {
  public:
    ModeExpansion(const std::vector<SymplecticTransform>& chain,
                  Eigen::VectorXd initial_variances)
        : initial_variances_(std::move(initial_variances)) {
        if (initial_variances_.size() == 0 || initial_variances_.size() % 2 != 0) {
            throw ShapeError("initial variance vector needs a positive even length");
        }
        if ((initial_variances_.array() < 0.0).any() || !initial_variances_.allFinite()) {
            throw ValidationError("initial variances must be finite and non-negative");
        }
        const int d = static_cast<int>(initial_variances_.size());
        coefficients_ = Eigen::MatrixXd::Identity(d, d);
        for (const SymplecticTransform& s : chain) {
            if (s.dim() != d) {
                throw ShapeError("transform chain dimension " + std::to_string(s.dim()) +
                                 " does not match expansion dimension " + std::to_string(d));
            }
            coefficients_ = s.matrix() * coefficients_;
        }
    }

    /// Row i holds the expansion of final quadrature i over the initial ones.
    const Eigen::MatrixXd& coefficients() const { return coefficients_; }

    /// Combined coefficient vector of a final-quadrature combination over the
    /// initial quadratures.
    Eigen::VectorXd expansion_of(const QuadratureCombination& u) const {
        if (u.dim() != coefficients_.rows()) {
            throw ShapeError("combination length " + std::to_string(u.dim()) +
                             " does not match expansion dimension " +
                             std::to_string(coefficients_.rows()));
        }
        return coefficients_.transpose() * u.coefficients();
    }

    double variance(const QuadratureCombination& u) const {
        const Eigen::VectorXd w = expansion_of(u);
        double total = 0.0;
        for (int k = 0; k < w.size(); ++k) {
            total += w(k) * w(k) * initial_variances_(k);
        }
        return total;
    }

  private:
    Eigen::VectorXd initial_variances_;
    Eigen::MatrixXd coefficients_;
};

} // namespace cvmem
