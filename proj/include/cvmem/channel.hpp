#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cvmem/errors.hpp"
#include "cvmem/modes.hpp"
#include "cvmem/state.hpp"
#include "cvmem/symplectic.hpp"

namespace cvmem {

/// Dimensionless light-atom coupling strength. Transfer efficiency enters
/// through e^{-kappa^2/2} only.
class CouplingStrength {
  public:
    explicit CouplingStrength(double kappa) : kappa_(kappa) {
        if (!std::isfinite(kappa_) || kappa_ < 0.0) {
            throw ValidationError("coupling strength must be finite and non-negative, got " +
                                  std::to_string(kappa_));
        }
    }

    double value() const { return kappa_; }

    /// Transmission-like amplitude e^{-kappa^2/2}.
    double damping() const { return std::exp(-0.5 * kappa_ * kappa_); }

    /// Transfer-like amplitude sqrt(1 - e^{-kappa^2}); damping^2 + transfer^2 = 1.
    double transfer() const { return std::sqrt(1.0 - std::exp(-kappa_ * kappa_)); }

  private:
    double kappa_;
};

/// Coefficients of the combined store-then-retrieve channel:
///   c1 = 1 - e^{-kappa^2}
///   c2 = e^{-kappa^2/2}
///   c3 = e^{-kappa^2/2} sqrt(1 - e^{-kappa^2})
/// They satisfy c1^2 + c2^2 + c3^2 = 1.
struct ChannelCoefficients {
    double c1 = 0.0;
    double c2 = 1.0;
    double c3 = 0.0;
};

inline ChannelCoefficients coefficients(const CouplingStrength& kappa) {
    const double u = std::exp(-kappa.value() * kappa.value());
    const double c2 = kappa.damping();
    return {1.0 - u, c2, c2 * std::sqrt(1.0 - u)};
}

/// Effective light-atom transfer map on two modes (atom first, light
/// second), acting identically on x and p quadratures:
///   atom_out  =  c * atom_in + s * light_in
///   light_out = -s * atom_in + c * light_in
/// with c = e^{-kappa^2/2} and s = sqrt(1 - e^{-kappa^2}). The atom row is
/// the storage relation, the light row the retrieval relation.
inline SymplecticTransform transfer_beam_splitter(const CouplingStrength& kappa) {
    const double c = kappa.damping();
    const double s = kappa.transfer();
    Eigen::MatrixXd m(4, 4);
    m << c, 0.0, s, 0.0, //
        0.0, c, 0.0, s,  //
        -s, 0.0, c, 0.0, //
        0.0, -s, 0.0, c;
    return SymplecticTransform(std::move(m));
}

/// Composes storage on (atom, write light) with retrieval on (atom, read
/// light) and measures how far the read-light output rows deviate from the
/// closed-form channel (-c1 write light, +c2 read light, -c3 atom).
/// The result is a max-abs residual and should sit at rounding level.
inline double composition_identity_check(const CouplingStrength& kappa) {
    const QuadratureOrdering ordering({atom(1), light(1), readout(1)});
    const SymplecticTransform storage =
        embed(transfer_beam_splitter(kappa), {atom(1), light(1)}, ordering);
    const SymplecticTransform retrieval =
        embed(transfer_beam_splitter(kappa), {atom(1), readout(1)}, ordering);
    const Eigen::MatrixXd total = retrieval.matrix() * storage.matrix();

    const ChannelCoefficients co = coefficients(kappa);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(2, 6);
    for (int q = 0; q < 2; ++q) { // x row then p row
        expected(q, ordering.x_index(atom(1)) + q) = -co.c3;
        expected(q, ordering.x_index(light(1)) + q) = -co.c1;
        expected(q, ordering.x_index(readout(1)) + q) = co.c2;
    }
    double residual = 0.0;
    for (int q = 0; q < 2; ++q) {
        const int row = ordering.x_index(readout(1)) + q;
        residual = std::max(residual, (total.row(row) - expected.row(q)).cwiseAbs().maxCoeff());
    }
    return residual;
}

struct C3Maximum {
    double kappa = 0.0;
    double value = 0.0;
};

/// Analytic maximum of c3 over kappa >= 0: with u = e^{-kappa^2},
/// c3 = sqrt(u (1 - u)) peaks at u = 1/2, i.e. kappa = sqrt(ln 2), value 1/2.
inline C3Maximum c3_maximum() {
    return {std::sqrt(std::log(2.0)), 0.5};
}

/// Brute-force grid maximum of c3, for cross-checking the analytic result.
inline C3Maximum c3_maximum_grid(double lo, double hi, double step) {
    if (!(lo >= 0.0) || !(hi > lo) || !(step > 0.0)) {
        throw ValidationError("c3 grid search needs 0 <= lo < hi and step > 0");
    }
    C3Maximum best{lo, coefficients(CouplingStrength(lo)).c3};
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1.0 + 1e-9));
    for (long i = 1; i < count; ++i) {
        const double kappa = lo + static_cast<double>(i) * step;
        const double value = coefficients(CouplingStrength(kappa)).c3;
        if (value > best.value) {
            best = {kappa, value};
        }
    }
    return best;
}

} // namespace cvmem
