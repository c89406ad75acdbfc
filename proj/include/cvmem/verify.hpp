#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cvmem/channel.hpp"
#include "cvmem/cluster.hpp"
#include "cvmem/csv.hpp"
#include "cvmem/mode_expansion.hpp"
#include "cvmem/protocol.hpp"
#include "cvmem/random_gen.hpp"
#include "cvmem/state.hpp"
#include "cvmem/svg.hpp"
#include "cvmem/sweep.hpp"
#include "cvmem/symplectic.hpp"
#include "cvmem/witness.hpp"

namespace cvmem {

struct VerifyOptions {
    /// Replaces every check's default tolerance when set.
    std::optional<double> tolerance_override;
    /// Test-harness hook: flips one sign in the cluster network table so the
    /// transcription guard can be seen failing.
    bool inject_network_sign_error = false;
    std::uint32_t seed = 20110616;
};

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    int n_passed() const {
        int n = 0;
        for (const CheckResult& c : checks) {
            n += c.passed ? 1 : 0;
        }
        return n;
    }
    int n_failed() const { return static_cast<int>(checks.size()) - n_passed(); }
    bool all_passed() const { return n_failed() == 0; }
};

namespace detail {

struct CheckSpec {
    std::string name;
    double tolerance;
    std::function<double(const VerifyOptions&, std::mt19937&)> residual;
};

inline const std::array<double, 6> kKappaGrid = {0.0, 0.5, 1.0, 1.5, 2.5, 5.0};
inline const std::array<double, 5> kSqueezeGrid = {0.0, 0.5, 1.0, 2.0, 3.0};

inline double protocol_grid_residual(Stage stage) {
    double worst = 0.0;
    for (double kappa : kKappaGrid) {
        for (double r : kSqueezeGrid) {
            const ProtocolConfig config(CouplingStrength(kappa),
                                        SqueezingProfile::uniform(r, 4), false);
            worst = std::max(worst, run_protocol(config).report(stage).max_deviation);
        }
    }
    return worst;
}

inline double xml_well_formed_residual(const std::string& text, int expected_polylines);

inline const std::vector<CheckSpec>& verification_checks() {
    static const std::vector<CheckSpec> checks = [] {
        std::vector<CheckSpec> list;
        const auto add = [&list](std::string name, double tolerance,
                                 std::function<double(const VerifyOptions&, std::mt19937&)> fn) {
            list.push_back({std::move(name), tolerance, std::move(fn)});
        };

        add("symplectic-form-involution", 1e-15, [](const VerifyOptions&, std::mt19937&) {
            double worst = 0.0;
            for (int n : {1, 2, 4, 12}) {
                const Eigen::MatrixXd j = symplectic_form(n);
                const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(2 * n, 2 * n);
                worst = std::max(worst, (j * j + identity).cwiseAbs().maxCoeff());
                worst = std::max(worst, (j + j.transpose()).cwiseAbs().maxCoeff());
            }
            return worst;
        });

        add("cluster-network-symplectic", 1e-12,
            [](const VerifyOptions& options, std::mt19937&) {
                Eigen::MatrixXd n = linear4_network_matrix();
                if (options.inject_network_sign_error) {
                    n(0, 0) = -n(0, 0);
                }
                return check_symplectic(n, 1e-12).max_residual;
            });

        add("squeezer-bank-symplectic", 1e-12, [](const VerifyOptions&, std::mt19937& rng) {
            std::uniform_real_distribution<double> pick(-2.0, 2.0);
            double worst = 0.0;
            for (int k = 0; k < 20; ++k) {
                Eigen::VectorXd r(4);
                for (int i = 0; i < 4; ++i) {
                    r(i) = pick(rng);
                }
                const SymplecticTransform s = squeezer_bank(SqueezingProfile(std::move(r)));
                worst = std::max(worst, check_symplectic(s.matrix(), 1.0).max_residual);
            }
            const SymplecticTransform deep = squeezer_bank(SqueezingProfile::uniform(15.0, 4));
            return std::max(worst, check_symplectic(deep.matrix(), 1.0).max_residual);
        });

        add("transfer-symplectic", 1e-12, [](const VerifyOptions&, std::mt19937& rng) {
            std::uniform_real_distribution<double> pick(0.0, 5.0);
            double worst = 0.0;
            for (int k = 0; k < 25; ++k) {
                const SymplecticTransform s =
                    transfer_beam_splitter(CouplingStrength(pick(rng)));
                worst = std::max(worst, check_symplectic(s.matrix(), 1.0).max_residual);
            }
            return worst;
        });

        add("edge-gate-symplectic", 1e-12, [](const VerifyOptions&, std::mt19937&) {
            double worst = check_symplectic(edge_gate().matrix(), 1.0).max_residual;
            const QuadratureOrdering ordering = QuadratureOrdering::lights(5);
            const SymplecticTransform wide = embed(edge_gate(), {light(2), light(5)}, ordering);
            return std::max(worst, check_symplectic(wide.matrix(), 1.0).max_residual);
        });

        add("uncertainty-preservation", 1e-9, [](const VerifyOptions&, std::mt19937& rng) {
            const QuadratureOrdering ordering = QuadratureOrdering::lights(3);
            double worst = 0.0;
            for (int k = 0; k < 40; ++k) {
                const GaussianState state = random_state(ordering, rng);
                const GaussianState mapped = apply(random_symplectic(ordering, rng), state);
                worst = std::max(worst, -mapped.uncertainty_margin());
            }
            return std::max(0.0, worst);
        });

        add("commutator-invariance", 1e-10, [](const VerifyOptions&, std::mt19937& rng) {
            const QuadratureOrdering ordering = QuadratureOrdering::lights(3);
            double worst = 0.0;
            for (int k = 0; k < 50; ++k) {
                const SymplecticTransform s = random_symplectic(ordering, rng);
                const QuadratureCombination u = random_combination(ordering.dim(), rng);
                const QuadratureCombination v = random_combination(ordering.dim(), rng);
                const QuadratureCombination su{s.matrix().transpose() * u.coefficients(), "Su"};
                const QuadratureCombination sv{s.matrix().transpose() * v.coefficients(), "Sv"};
                worst = std::max(worst, std::abs(commutator_coefficient(su, sv) -
                                                 commutator_coefficient(u, v)));
            }
            return worst;
        });

        add("representation-equivalence", 1e-12, [](const VerifyOptions&, std::mt19937&) {
            double worst = 0.0;
            for (double kappa : kKappaGrid) {
                for (double r : kSqueezeGrid) {
                    const ProtocolConfig config(CouplingStrength(kappa),
                                                SqueezingProfile::uniform(r, 4), false);
                    const ProtocolResult result = run_protocol(config);
                    for (Stage stage : kStages) {
                        for (std::size_t i = 0; i < 4; ++i) {
                            const double via_cov =
                                result.report(stage).nullifier_variances[i];
                            const double via_expansion =
                                result.oracle_variances[static_cast<std::size_t>(
                                    stage_index(stage))][i];
                            worst = std::max(worst, std::abs(via_cov - via_expansion));
                        }
                    }
                }
            }
            return worst;
        });

        add("translation-invariance", 0.0, [](const VerifyOptions&, std::mt19937& rng) {
            const QuadratureOrdering ordering = QuadratureOrdering::lights(3);
            std::uniform_real_distribution<double> shift(-3.0, 3.0);
            double worst = 0.0;
            for (int k = 0; k < 50; ++k) {
                const GaussianState state = random_state(ordering, rng, false);
                const QuadratureCombination u = random_combination(ordering.dim(), rng);
                Eigen::VectorXd offset(ordering.dim());
                for (int i = 0; i < offset.size(); ++i) {
                    offset(i) = shift(rng);
                }
                worst = std::max(worst, std::abs(variance(displaced(state, offset), u) -
                                                 variance(state, u)));
            }
            return worst;
        });

        add("input-closed-form", 1e-12, [](const VerifyOptions&, std::mt19937&) {
            const NullifierSet nulls = nullifiers(GraphSpec::chain(4));
            double worst = 0.0;
            for (double r : kSqueezeGrid) {
                const GaussianState cluster =
                    build_linear4_cluster(SqueezingProfile::uniform(r, 4));
                for (int which = 1; which <= 4; ++which) {
                    const double sim = variance(
                        cluster, nulls.combinations[static_cast<std::size_t>(which - 1)]);
                    worst = std::max(worst,
                                     std::abs(sim - input_variance_closed_form(r, which)));
                }
            }
            return worst;
        });

        add("stored-closed-form", 1e-12, [](const VerifyOptions&, std::mt19937&) {
            return protocol_grid_residual(Stage::Stored);
        });

        add("retrieved-closed-form", 1e-12, [](const VerifyOptions&, std::mt19937&) {
            return protocol_grid_residual(Stage::Retrieved);
        });

        add("graph-cluster-closed-form", 1e-12, [](const VerifyOptions&, std::mt19937& rng) {
            std::uniform_real_distribution<double> pick(0.0, 2.0);
            double worst = 0.0;
            for (int k = 0; k < 15; ++k) {
                const GraphSpec graph = random_graph(rng);
                Eigen::VectorXd r(graph.n_vertices());
                for (int i = 0; i < r.size(); ++i) {
                    r(i) = pick(rng);
                }
                const SqueezingProfile profile(r);
                const GaussianState state = build_graph_cluster(graph, profile);
                const NullifierSet nulls = nullifiers(graph);
                for (int a = 1; a <= graph.n_vertices(); ++a) {
                    const double sim =
                        variance(state, nulls.combinations[static_cast<std::size_t>(a - 1)]);
                    worst = std::max(worst,
                                     std::abs(sim - 0.25 * std::exp(-2.0 * r(a - 1))));
                }
            }
            return worst;
        });

        add("nullifier-commutation", 1e-12, [](const VerifyOptions&, std::mt19937& rng) {
            double worst = 0.0;
            for (int k = 0; k < 25; ++k) {
                const NullifierSet nulls = nullifiers(random_graph(rng));
                for (std::size_t a = 0; a < nulls.combinations.size(); ++a) {
                    for (std::size_t b = a + 1; b < nulls.combinations.size(); ++b) {
                        worst = std::max(worst,
                                         std::abs(commutator_coefficient(
                                             nulls.combinations[a], nulls.combinations[b])));
                    }
                }
            }
            return worst;
        });

        add("nullifier-monotonicity", 0.0, [](const VerifyOptions&, std::mt19937&) {
            const NullifierSet nulls = nullifiers(GraphSpec::chain(4));
            double worst = 0.0;
            std::array<double, 4> previous{};
            bool have_previous = false;
            for (double r = 0.0; r <= 3.0; r += 0.25) {
                const GaussianState cluster =
                    build_linear4_cluster(SqueezingProfile::uniform(r, 4));
                std::array<double, 4> current{};
                for (std::size_t i = 0; i < 4; ++i) {
                    current[i] = variance(cluster, nulls.combinations[i]);
                }
                if (have_previous) {
                    for (std::size_t i = 0; i < 4; ++i) {
                        worst = std::max(worst, current[i] - previous[i]);
                    }
                }
                previous = current;
                have_previous = true;
            }
            return std::max(0.0, worst);
        });

        add("coefficient-normalization", 1e-12, [](const VerifyOptions&, std::mt19937& rng) {
            std::uniform_real_distribution<double> pick(0.0, 5.0);
            double worst = 0.0;
            for (int k = 0; k < 100; ++k) {
                const ChannelCoefficients co = coefficients(CouplingStrength(pick(rng)));
                worst = std::max(
                    worst, std::abs(co.c1 * co.c1 + co.c2 * co.c2 + co.c3 * co.c3 - 1.0));
            }
            return worst;
        });

        add("coefficient-monotonicity", 0.0, [](const VerifyOptions&, std::mt19937&) {
            double worst = 0.0;
            ChannelCoefficients previous = coefficients(CouplingStrength(0.0));
            for (int i = 1; i <= 300; ++i) {
                const ChannelCoefficients current =
                    coefficients(CouplingStrength(0.01 * static_cast<double>(i)));
                worst = std::max(worst, previous.c1 - current.c1);
                worst = std::max(worst, current.c2 - previous.c2);
                previous = current;
            }
            return std::max(0.0, worst);
        });

        // Normalized residual: each limit deviation divided by its budget.
        add("coefficient-limits", 1.0, [](const VerifyOptions&, std::mt19937&) {
            const ChannelCoefficients co = coefficients(CouplingStrength(6.0));
            double worst = std::abs(co.c1 - 1.0) / 1e-15;
            worst = std::max(worst, co.c2 / 2e-8);
            worst = std::max(worst, co.c3 / 2e-8);
            return worst;
        });

        add("c3-maximum", 1.0, [](const VerifyOptions&, std::mt19937&) {
            const C3Maximum analytic = c3_maximum();
            const C3Maximum grid = c3_maximum_grid(0.0, 3.0, 1e-4);
            double worst = std::abs(grid.kappa - analytic.kappa) / 1e-4;
            worst = std::max(worst, std::abs(grid.value - analytic.value) / 1e-8);
            worst = std::max(worst, std::abs(analytic.value - 0.5) / 1e-12);
            return worst;
        });

        add("transfer-xp-symmetry", 0.0, [](const VerifyOptions&, std::mt19937&) {
            double worst = 0.0;
            for (double kappa : {0.0, 0.7, 1.5, 2.5, 4.0}) {
                const Eigen::MatrixXd m =
                    transfer_beam_splitter(CouplingStrength(kappa)).matrix();
                for (int a = 0; a < 2; ++a) {
                    for (int b = 0; b < 2; ++b) {
                        // x block equals p block, and x never mixes into p.
                        worst = std::max(worst,
                                         std::abs(m(2 * a, 2 * b) - m(2 * a + 1, 2 * b + 1)));
                        worst = std::max(worst, std::abs(m(2 * a, 2 * b + 1)));
                        worst = std::max(worst, std::abs(m(2 * a + 1, 2 * b)));
                    }
                }
            }
            return worst;
        });

        add("composition-identity", 1e-12, [](const VerifyOptions&, std::mt19937& rng) {
            std::uniform_real_distribution<double> pick(0.0, 5.0);
            double worst = 0.0;
            for (int k = 0; k < 100; ++k) {
                worst = std::max(worst, composition_identity_check(CouplingStrength(pick(rng))));
            }
            return worst;
        });

        add("stage-ordering", 0.0, [](const VerifyOptions&, std::mt19937&) {
            double worst = 0.0;
            for (double r : {0.25, 0.5, 1.0, 2.0, 3.0}) {
                const ProtocolConfig config(CouplingStrength(1.5),
                                            SqueezingProfile::uniform(r, 4), false);
                const ProtocolResult result = run_protocol(config);
                for (std::size_t i = 0; i < 4; ++i) {
                    const double vi = result.report(Stage::Input).nullifier_variances[i];
                    const double vs = result.report(Stage::Stored).nullifier_variances[i];
                    const double vr = result.report(Stage::Retrieved).nullifier_variances[i];
                    worst = std::max(worst, vi - vs);
                    worst = std::max(worst, vs - vr);
                }
            }
            return std::max(0.0, worst);
        });

        add("stage-near-coincidence", 0.0029, [](const VerifyOptions&, std::mt19937&) {
            double worst = 0.0;
            for (double r = 0.0; r <= 3.0; r += 0.25) {
                const ProtocolConfig config(CouplingStrength(2.5),
                                            SqueezingProfile::uniform(r, 4), false);
                const ProtocolResult result = run_protocol(config);
                for (std::size_t i = 0; i < 4; ++i) {
                    const double vi = result.report(Stage::Input).nullifier_variances[i];
                    for (Stage stage : {Stage::Stored, Stage::Retrieved}) {
                        worst = std::max(
                            worst, std::abs(result.report(stage).nullifier_variances[i] - vi));
                    }
                }
            }
            return worst;
        });

        add("stored-correlation-residual", 1e-12, [](const VerifyOptions&, std::mt19937&) {
            const std::array<double, 4> pref = linear4_prefactors();
            double worst = 0.0;
            for (double r : kSqueezeGrid) {
                std::array<double, 4> previous{};
                bool have_previous = false;
                for (double kappa : kKappaGrid) {
                    const ProtocolConfig config(CouplingStrength(kappa),
                                                SqueezingProfile::uniform(r, 4), false);
                    const std::array<double, 4> residuals = stored_correlation_residual(config);
                    const double u = std::exp(-kappa * kappa);
                    for (std::size_t i = 0; i < 4; ++i) {
                        const double expected = pref[i] * u * (1.0 - std::exp(-2.0 * r));
                        worst = std::max(worst, std::abs(residuals[i] - expected));
                        if (have_previous && residuals[i] > previous[i] + 1e-13) {
                            worst = std::max(worst, residuals[i] - previous[i]);
                        }
                    }
                    previous = residuals;
                    have_previous = true;
                }
            }
            return worst;
        });

        add("sign-flip", 1e-12, [](const VerifyOptions&, std::mt19937& rng) {
            std::uniform_real_distribution<double> pick(-2.0, 2.0);
            double worst = 0.0;
            for (double kappa : {0.0, 0.5, 1.5, 2.5, 6.0}) {
                Eigen::VectorXd displacement(8);
                for (int i = 0; i < 8; ++i) {
                    displacement(i) = pick(rng);
                }
                worst = std::max(worst,
                                 sign_flip_check(CouplingStrength(kappa), displacement));
            }
            return worst;
        });

        add("channel-permutation", 1e-12, [](const VerifyOptions&, std::mt19937& rng) {
            // Conjugating the pipeline by a mode relabeling permutes the
            // reports and changes nothing else.
            double worst = 0.0;
            const QuadratureOrdering lights4 = QuadratureOrdering::lights(4);
            std::vector<int> perm = {0, 1, 2, 3};
            for (int trial = 0; trial < 8; ++trial) {
                std::shuffle(perm.begin(), perm.end(), rng);
                Eigen::VectorXd r(4);
                std::uniform_real_distribution<double> pick(0.0, 2.0);
                for (int i = 0; i < 4; ++i) {
                    r(i) = pick(rng);
                }
                const CouplingStrength kappa(1.5);
                const ProtocolConfig base(kappa, SqueezingProfile(r), false);
                const ProtocolResult direct = run_protocol(base);

                // Same protocol with the cluster modes permuted: permute the
                // prepared input, run the channels, evaluate permuted
                // nullifiers.
                const QuadratureOrdering ordering = protocol_ordering();
                const ProtocolTransforms transforms = protocol_transforms(base);
                const SymplecticTransform relabel =
                    embed(mode_permutation(perm), stage_modes(Stage::Input), ordering);
                GaussianState state = vacuum_state(ordering);
                state = apply(transforms.squeeze, state);
                state = apply(transforms.network, state);
                state = apply(relabel, state);
                state = apply(transforms.store, state);
                state = apply(transforms.retrieve, state);

                const NullifierSet nulls = nullifiers(GraphSpec::chain(4));
                const std::vector<ModeLabel> carriers = stage_modes(Stage::Retrieved);
                for (std::size_t a = 0; a < 4; ++a) {
                    Eigen::VectorXd lifted = Eigen::VectorXd::Zero(ordering.dim());
                    for (int m = 0; m < 4; ++m) {
                        const ModeLabel target =
                            carriers[static_cast<std::size_t>(perm[static_cast<std::size_t>(m)])];
                        lifted(ordering.x_index(target)) =
                            nulls.combinations[a].coefficients()(2 * m);
                        lifted(ordering.p_index(target)) =
                            nulls.combinations[a].coefficients()(2 * m + 1);
                    }
                    const double permuted =
                        variance(state, QuadratureCombination{lifted, "permuted"});
                    worst = std::max(
                        worst,
                        std::abs(permuted -
                                 direct.report(Stage::Retrieved).nullifier_variances[a]));
                }
            }
            return worst;
        });

        // Normalized: worst grid entry difference over its (1 - c1^2) budget.
        add("retrieved-covariance-bound", 1.0, [](const VerifyOptions&, std::mt19937&) {
            double worst = 0.0;
            for (double kappa : kKappaGrid) {
                for (double r : kSqueezeGrid) {
                    const ProtocolConfig config(CouplingStrength(kappa),
                                                SqueezingProfile::uniform(r, 4), true);
                    const ProtocolResult result = run_protocol(config);
                    const double c1 = coefficients(config.kappa).c1;
                    const double bound =
                        (1.0 - c1 * c1) * std::max(std::exp(2.0 * r) / 4.0, 1.0);
                    const double diff = (result.stage_marginals[2].cov() -
                                         result.stage_marginals[0].cov())
                                            .cwiseAbs()
                                            .maxCoeff();
                    worst = std::max(worst, diff / bound);
                }
            }
            return worst;
        });

        add("csv-determinism", 0.0, [](const VerifyOptions&, std::mt19937&) {
            SweepSpec spec;
            spec.variable = SweepVariable::Kappa;
            spec.start = 0.0;
            spec.stop = 1.0;
            spec.step = 0.05;
            const std::string once = coefficient_csv(sweep_coefficients(spec)).to_string();
            const std::string twice = coefficient_csv(sweep_coefficients(spec)).to_string();
            return once == twice ? 0.0 : 1.0;
        });

        add("csv-round-trip", 0.0, [](const VerifyOptions&, std::mt19937&) {
            SweepSpec spec;
            spec.variable = SweepVariable::Kappa;
            spec.start = 0.0;
            spec.stop = 2.0;
            spec.step = 0.07;
            const std::vector<SweepRecord> records = sweep_coefficients(spec);
            const CsvTable emitted = coefficient_csv(records);
            const CsvTable parsed = parse_csv_text(emitted.to_string());
            double mismatches = 0.0;
            for (std::size_t row = 0; row < records.size(); ++row) {
                if (parse_double(parsed.rows[row][0]) != records[row].abscissa) {
                    mismatches += 1.0;
                }
                for (std::size_t col = 0; col < 3; ++col) {
                    if (parse_double(parsed.rows[row][col + 1]) !=
                        records[row].series[col].second) {
                        mismatches += 1.0;
                    }
                }
            }
            return mismatches;
        });

        add("svg-well-formed", 0.0, [](const VerifyOptions&, std::mt19937&) {
            SweepSpec spec;
            spec.variable = SweepVariable::Kappa;
            spec.start = 0.0;
            spec.stop = 2.0;
            spec.step = 0.1;
            const std::string svg = render_svg({coefficient_panel(sweep_coefficients(spec))});
            return xml_well_formed_residual(svg, 3);
        });

        add("asymptote-constants", 1e-9, [](const VerifyOptions&, std::mt19937&) {
            const CouplingStrength kappa(1.5);
            const ProtocolConfig config(kappa, SqueezingProfile::uniform(15.0, 4), false);
            const ProtocolResult result = run_protocol(config);
            double worst = 0.0;
            // The expansion route stays accurate at extreme squeezing;
            // compare it against the closed forms.
            for (int which : {1, 2, 3, 4}) {
                const std::size_t i = static_cast<std::size_t>(which - 1);
                worst = std::max(worst,
                                 std::abs(result.oracle_variances[1][i] -
                                          stored_variance_closed_form(15.0, kappa, which)));
                worst = std::max(worst,
                                 std::abs(result.oracle_variances[2][i] -
                                          retrieved_variance_closed_form(15.0, kappa, which)));
            }
            return worst;
        });

        return list;
    }();
    return checks;
}

inline double xml_well_formed_residual(const std::string& text, int expected_polylines) {
    std::vector<std::string> stack;
    int polylines = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        const std::size_t close = text.find('>', i);
        if (close == std::string::npos) {
            return 1.0;
        }
        std::string tag = text.substr(i + 1, close - i - 1);
        i = close + 1;
        if (tag.empty()) {
            return 1.0;
        }
        if (tag[0] == '?' || tag[0] == '!') {
            continue;
        }
        const bool self_closing = tag.back() == '/';
        if (self_closing) {
            tag.pop_back();
        }
        std::string name = tag.substr(0, tag.find_first_of(" \t\n"));
        if (name.empty()) {
            return 1.0;
        }
        if (name[0] == '/') {
            if (stack.empty() || stack.back() != name.substr(1)) {
                return 1.0;
            }
            stack.pop_back();
            continue;
        }
        if (name == "polyline") {
            ++polylines;
        }
        if (!self_closing) {
            stack.push_back(name);
        }
    }
    if (!stack.empty()) {
        return 1.0;
    }
    return polylines == expected_polylines ? 0.0 : 1.0;
}

} // namespace detail

inline std::vector<std::string> verification_check_names() {
    std::vector<std::string> names;
    for (const detail::CheckSpec& spec : detail::verification_checks()) {
        names.push_back(spec.name);
    }
    return names;
}

/// Runs every registered invariant check. Checks are independent; one RNG
/// seeded from the options drives all randomized cases.
inline VerificationReport run_verification(const VerifyOptions& options = {}) {
    VerificationReport report;
    std::mt19937 rng(options.seed);
    for (const detail::CheckSpec& spec : detail::verification_checks()) {
        const double tolerance = options.tolerance_override.value_or(spec.tolerance);
        CheckResult result;
        result.name = spec.name;
        result.tolerance = tolerance;
        result.residual = spec.residual(options, rng);
        result.passed = result.residual <= tolerance;
        report.checks.push_back(std::move(result));
    }
    return report;
}

inline void print_report(std::ostream& out, const VerificationReport& report) {
    for (const CheckResult& check : report.checks) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-32s residual %-12.3g tol %-10.3g %s",
                      check.name.c_str(), check.residual, check.tolerance,
                      check.passed ? "PASS" : "FAIL");
        out << line << '\n';
    }
    out << report.n_passed() << " passed, " << report.n_failed() << " failed\n";
}

} // namespace cvmem
