#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cvmem/channel.hpp"
#include "cvmem/cluster.hpp"
#include "cvmem/errors.hpp"
#include "cvmem/graph.hpp"
#include "cvmem/mode_expansion.hpp"
#include "cvmem/state.hpp"
#include "cvmem/symplectic.hpp"

namespace cvmem {

enum class Stage { Input, Stored, Retrieved };

inline constexpr std::array<Stage, 3> kStages = {Stage::Input, Stage::Stored, Stage::Retrieved};

inline std::string to_string(Stage stage) {
    switch (stage) {
    case Stage::Input:
        return "input";
    case Stage::Stored:
        return "stored";
    default:
        return "retrieved";
    }
}

inline int stage_index(Stage stage) { return static_cast<int>(stage); }

/// Full protocol parameters: one coupling strength shared by the four
/// channels plus the four input squeezing parameters.
struct ProtocolConfig {
    CouplingStrength kappa;
    SqueezingProfile profile;
    bool track_stage_snapshots = false;

    ProtocolConfig(CouplingStrength kappa_in, SqueezingProfile profile_in,
                   bool snapshots_in = false)
        : kappa(kappa_in), profile(std::move(profile_in)), track_stage_snapshots(snapshots_in) {
        if (profile.size() != 4) {
            throw ValidationError("the protocol stores a four-mode cluster; profile has " +
                                  std::to_string(profile.size()) + " entries");
        }
    }

    /// Loads {"kappa": real, "r": real or [r1, r2, r3, r4], "snapshots": bool}.
    static ProtocolConfig from_json(const nlohmann::json& doc) {
        if (!doc.is_object()) {
            throw ParseError("protocol config must be a JSON object");
        }
        for (const auto& item : doc.items()) {
            if (item.key() != "kappa" && item.key() != "r" && item.key() != "snapshots") {
                throw ParseError("protocol config has unknown field '" + item.key() + "'");
            }
        }
        if (!doc.contains("kappa") || !doc["kappa"].is_number()) {
            throw ParseError("protocol config field 'kappa' must be a number");
        }
        if (!doc.contains("r")) {
            throw ParseError("protocol config is missing field 'r'");
        }
        Eigen::VectorXd r(4);
        if (doc["r"].is_number()) {
            r.setConstant(doc["r"].get<double>());
        } else if (doc["r"].is_array() && doc["r"].size() == 4) {
            for (int i = 0; i < 4; ++i) {
                if (!doc["r"][static_cast<std::size_t>(i)].is_number()) {
                    throw ParseError("protocol config field 'r' must hold numbers");
                }
                r(i) = doc["r"][static_cast<std::size_t>(i)].get<double>();
            }
        } else {
            throw ParseError("protocol config field 'r' must be a number or a length-4 array");
        }
        bool snapshots = false;
        if (doc.contains("snapshots")) {
            if (!doc["snapshots"].is_boolean()) {
                throw ParseError("protocol config field 'snapshots' must be a boolean");
            }
            snapshots = doc["snapshots"].get<bool>();
        }
        return ProtocolConfig(CouplingStrength(doc["kappa"].get<double>()),
                              SqueezingProfile(std::move(r)), snapshots);
    }
};

/// The twelve modes of the protocol: cluster light 1..4, atomic ensembles
/// 1..4, read-out pulses 1..4.
inline QuadratureOrdering protocol_ordering() {
    std::vector<ModeLabel> modes;
    for (int i = 1; i <= 4; ++i) {
        modes.push_back(light(i));
    }
    for (int i = 1; i <= 4; ++i) {
        modes.push_back(atom(i));
    }
    for (int i = 1; i <= 4; ++i) {
        modes.push_back(readout(i));
    }
    return QuadratureOrdering(std::move(modes));
}

/// The four modes a stage's nullifiers are evaluated on.
inline std::vector<ModeLabel> stage_modes(Stage stage) {
    std::vector<ModeLabel> modes;
    for (int i = 1; i <= 4; ++i) {
        switch (stage) {
        case Stage::Input:
            modes.push_back(light(i));
            break;
        case Stage::Stored:
            modes.push_back(atom(i));
            break;
        default:
            modes.push_back(readout(i));
            break;
        }
    }
    return modes;
}

/// The pipeline as individually validated transforms over the full ordering.
/// They are applied to the state one by one; pre-multiplying the squeezer
/// into one product would scale the construction-time symplectic residual by
/// e^{2r}.
struct ProtocolTransforms {
    SymplecticTransform squeeze;
    SymplecticTransform network;
    SymplecticTransform store;
    SymplecticTransform retrieve;
};

inline ProtocolTransforms protocol_transforms(const ProtocolConfig& config) {
    const QuadratureOrdering ordering = protocol_ordering();
    const std::vector<ModeLabel> lights = stage_modes(Stage::Input);

    SymplecticTransform store = SymplecticTransform::identity(ordering.n_modes());
    SymplecticTransform retrieve = store;
    for (int i = 1; i <= 4; ++i) {
        const SymplecticTransform bs = transfer_beam_splitter(config.kappa);
        store = embed(bs, {atom(i), light(i)}, ordering) * store;
        retrieve = embed(bs, {atom(i), readout(i)}, ordering) * retrieve;
    }
    return {embed(squeezer_bank(config.profile), lights, ordering),
            embed(linear4_network(), lights, ordering), std::move(store), std::move(retrieve)};
}

struct StageReport {
    Stage stage = Stage::Input;
    std::array<double, 4> nullifier_variances{};
    std::array<double, 4> closed_form_variances{};
    double max_deviation = 0.0;
};

struct ProtocolResult {
    std::array<StageReport, 3> reports;
    /// Same variances evaluated through the mode-expansion route; this is
    /// the representation that stays exact at extreme squeezing.
    std::array<std::array<double, 4>, 3> oracle_variances;
    /// Four-mode marginal of each stage's carrier modes.
    std::vector<GaussianState> stage_marginals;
    GaussianState final_state;
    /// Full twelve-mode snapshots per stage when requested.
    std::vector<GaussianState> snapshots;

    const StageReport& report(Stage stage) const {
        return reports[static_cast<std::size_t>(stage_index(stage))];
    }
};

/// Nullifier prefactors of the four-mode linear cluster: the vacuum variance
/// of p_a - sum x_b is (1 + deg(a)) / 4.
inline std::array<double, 4> linear4_prefactors() { return {0.5, 0.75, 0.75, 0.5}; }

inline int validate_which(int which) {
    if (which < 1 || which > 4) {
        throw ValidationError("nullifier index must lie in 1..4, got " + std::to_string(which));
    }
    return which;
}

/// Input-stage nullifier variance at uniform squeezing r:
/// (1/2) e^{-2r} for nullifiers 1 and 4, (3/4) e^{-2r} for 2 and 3.
inline double input_variance_closed_form(double r, int which) {
    validate_which(which);
    if (!std::isfinite(r)) {
        throw ValidationError("squeezing parameter must be finite");
    }
    return linear4_prefactors()[static_cast<std::size_t>(which - 1)] * std::exp(-2.0 * r);
}

/// Stored-stage nullifier variance: prefactor * [(1 - e^{-k^2}) e^{-2r} + e^{-k^2}].
inline double stored_variance_closed_form(double r, const CouplingStrength& kappa, int which) {
    validate_which(which);
    if (!std::isfinite(r)) {
        throw ValidationError("squeezing parameter must be finite");
    }
    const double u = std::exp(-kappa.value() * kappa.value());
    const double pref = linear4_prefactors()[static_cast<std::size_t>(which - 1)];
    return pref * ((1.0 - u) * std::exp(-2.0 * r) + u);
}

/// Retrieved-stage nullifier variance:
/// prefactor * [(1 - e^{-k^2})^2 e^{-2r} + (2 - e^{-k^2}) e^{-k^2}].
inline double retrieved_variance_closed_form(double r, const CouplingStrength& kappa,
                                             int which) {
    validate_which(which);
    if (!std::isfinite(r)) {
        throw ValidationError("squeezing parameter must be finite");
    }
    const double u = std::exp(-kappa.value() * kappa.value());
    const double pref = linear4_prefactors()[static_cast<std::size_t>(which - 1)];
    return pref * ((1.0 - u) * (1.0 - u) * std::exp(-2.0 * r) + (2.0 - u) * u);
}

namespace detail {

/// Input nullifier variances for a possibly non-uniform profile. Nullifier 1
/// keeps sqrt(2) p~_1, nullifier 4 keeps sqrt(2) p~_4, nullifier 2 keeps
/// (sqrt(10)/2) p~_3 + (1/sqrt(2)) p~_4, and nullifier 3 keeps
/// (1/sqrt(2)) p~_1 - (sqrt(10)/2) p~_2, with p~_i the squeezed inputs.
inline std::array<double, 4> input_closed_forms(const SqueezingProfile& profile) {
    const auto e2 = [&](int i) { return std::exp(-2.0 * profile[i]); };
    return {
        0.5 * e2(0),
        (5.0 / 8.0) * e2(2) + (1.0 / 8.0) * e2(3),
        (1.0 / 8.0) * e2(0) + (5.0 / 8.0) * e2(1),
        0.5 * e2(3),
    };
}

inline std::array<double, 4> stage_closed_forms(Stage stage, const SqueezingProfile& profile,
                                                const CouplingStrength& kappa) {
    const std::array<double, 4> input = input_closed_forms(profile);
    const std::array<double, 4> pref = linear4_prefactors();
    const double u = std::exp(-kappa.value() * kappa.value());
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        switch (stage) {
        case Stage::Input:
            out[i] = input[i];
            break;
        case Stage::Stored:
            out[i] = (1.0 - u) * input[i] + u * pref[i];
            break;
        default:
            out[i] = (1.0 - u) * (1.0 - u) * input[i] + (2.0 - u) * u * pref[i];
            break;
        }
    }
    return out;
}

} // namespace detail

/// Runs storage and retrieval of the four-mode linear cluster through the
/// four channels and reports nullifier variances at all three stages, both
/// simulated and closed form.
inline ProtocolResult run_protocol(const ProtocolConfig& config) {
    const QuadratureOrdering ordering = protocol_ordering();
    const ProtocolTransforms transforms = protocol_transforms(config);
    const NullifierSet nulls = nullifiers(GraphSpec::chain(4));

    GaussianState state = vacuum_state(ordering);
    state = apply(transforms.squeeze, state);
    state = apply(transforms.network, state);

    const Eigen::VectorXd vacuum_variances =
        Eigen::VectorXd::Constant(ordering.dim(), 0.25);
    std::vector<SymplecticTransform> chain = {transforms.squeeze, transforms.network};

    std::array<StageReport, 3> reports;
    std::array<std::array<double, 4>, 3> oracle{};
    std::vector<GaussianState> marginals;
    std::vector<GaussianState> snapshots;

    for (Stage stage : kStages) {
        if (stage == Stage::Stored) {
            state = apply(transforms.store, state);
            chain.push_back(transforms.store);
        } else if (stage == Stage::Retrieved) {
            state = apply(transforms.retrieve, state);
            chain.push_back(transforms.retrieve);
        }
        const std::vector<ModeLabel> carriers = stage_modes(stage);
        const ModeExpansion expansion(chain, vacuum_variances);

        StageReport report;
        report.stage = stage;
        report.closed_form_variances =
            detail::stage_closed_forms(stage, config.profile, config.kappa);
        for (std::size_t a = 0; a < 4; ++a) {
            const QuadratureCombination lifted =
                lift(nulls.combinations[a], carriers, ordering);
            report.nullifier_variances[a] = variance(state, lifted);
            oracle[static_cast<std::size_t>(stage_index(stage))][a] =
                expansion.variance(lifted);
            report.max_deviation =
                std::max(report.max_deviation, std::abs(report.nullifier_variances[a] -
                                                        report.closed_form_variances[a]));
        }
        reports[static_cast<std::size_t>(stage_index(stage))] = report;
        marginals.push_back(reduced(state, carriers));
        if (config.track_stage_snapshots) {
            snapshots.push_back(state);
        }
    }

    return {reports, oracle, std::move(marginals), std::move(state), std::move(snapshots)};
}

/// Simulated stored-stage variances minus the ideal large-coupling values
/// (the input-stage closed forms). Each residual equals
/// prefactor * e^{-kappa^2} * (1 - e^{-2r}) and shrinks monotonically with
/// the coupling.
inline std::array<double, 4> stored_correlation_residual(const ProtocolConfig& config) {
    const ProtocolResult result = run_protocol(config);
    const std::array<double, 4> input =
        detail::input_closed_forms(config.profile);
    std::array<double, 4> residuals{};
    for (std::size_t i = 0; i < 4; ++i) {
        residuals[i] = result.report(Stage::Stored).nullifier_variances[i] - input[i];
    }
    return residuals;
}

/// Displaces the four input light modes (length-8 mean offset, interleaved
/// x/p), runs storage and retrieval, and returns the worst deviation of the
/// read-out means from -c1 times the input means. The minus sign is the
/// channel's signature; it survives at every coupling strength and the scale
/// factor c1 approaches 1 for large coupling.
inline double sign_flip_check(const CouplingStrength& kappa,
                              const Eigen::VectorXd& displacement) {
    if (displacement.size() != 8) {
        throw ShapeError("sign-flip displacement must have length 8, got " +
                         std::to_string(displacement.size()));
    }
    const QuadratureOrdering ordering = protocol_ordering();
    const ProtocolConfig config(kappa, SqueezingProfile::uniform(0.0, 4), false);
    const ProtocolTransforms transforms = protocol_transforms(config);

    GaussianState state = vacuum_state(ordering);
    state = apply(transforms.squeeze, state);
    state = apply(transforms.network, state);

    Eigen::VectorXd offset = Eigen::VectorXd::Zero(ordering.dim());
    for (int i = 0; i < 4; ++i) {
        offset(ordering.x_index(light(i + 1))) = displacement(2 * i);
        offset(ordering.p_index(light(i + 1))) = displacement(2 * i + 1);
    }
    state = displaced(state, offset);
    state = apply(transforms.store, state);
    state = apply(transforms.retrieve, state);

    const double c1 = coefficients(kappa).c1;
    double residual = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double mx = state.mean()(ordering.x_index(readout(i + 1)));
        const double mp = state.mean()(ordering.p_index(readout(i + 1)));
        residual = std::max(residual, std::abs(mx - (-c1 * displacement(2 * i))));
        residual = std::max(residual, std::abs(mp - (-c1 * displacement(2 * i + 1))));
    }
    return residual;
}

} // namespace cvmem
