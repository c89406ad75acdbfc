#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <json.hpp>

#include "cvmem/channel.hpp"
#include "cvmem/cluster.hpp"
#include "cvmem/errors.hpp"
#include "cvmem/json_io.hpp"
#include "cvmem/protocol.hpp"
#include "cvmem/witness.hpp"

using namespace cvmem;

namespace {

const std::array<double, 6> kKappaGrid = {0.0, 0.5, 1.0, 1.5, 2.5, 5.0};
const std::array<double, 5> kSqueezeGrid = {0.0, 0.5, 1.0, 2.0, 3.0};

ProtocolConfig make_config(double kappa, double r, bool snapshots = false) {
    return ProtocolConfig(CouplingStrength(kappa), SqueezingProfile::uniform(r, 4), snapshots);
}

/// Runs the protocol with the prepared cluster modes relabeled by `perm` and
/// returns the retrieved variances read back through the same relabeling.
std::array<double, 4> permuted_retrieved_variances(const ProtocolConfig& config,
                                                   const std::vector<int>& perm) {
    const QuadratureOrdering ordering = protocol_ordering();
    const ProtocolTransforms transforms = protocol_transforms(config);
    GaussianState state = vacuum_state(ordering);
    state = apply(transforms.squeeze, state);
    state = apply(transforms.network, state);
    state = apply(embed(mode_permutation(perm), stage_modes(Stage::Input), ordering), state);
    state = apply(transforms.store, state);
    state = apply(transforms.retrieve, state);

    const NullifierSet nulls = nullifiers(GraphSpec::chain(4));
    const std::vector<ModeLabel> carriers = stage_modes(Stage::Retrieved);
    std::array<double, 4> out{};
    for (std::size_t a = 0; a < 4; ++a) {
        Eigen::VectorXd lifted = Eigen::VectorXd::Zero(ordering.dim());
        for (int m = 0; m < 4; ++m) {
            const ModeLabel target =
                carriers[static_cast<std::size_t>(perm[static_cast<std::size_t>(m)])];
            lifted(ordering.x_index(target)) = nulls.combinations[a].coefficients()(2 * m);
            lifted(ordering.p_index(target)) = nulls.combinations[a].coefficients()(2 * m + 1);
        }
        out[a] = variance(state, QuadratureCombination{lifted, "permuted"});
    }
    return out;
}

} // namespace

TEST_CASE("closed-form variance expressions", "[protocol]") {
    SECTION("input stage") {
        REQUIRE(input_variance_closed_form(0.0, 1) == 0.5);
        REQUIRE_THAT(input_variance_closed_form(1.0, 2),
                     Catch::Matchers::WithinAbs(0.10150146242745952, 1e-15));
        REQUIRE_THAT(input_variance_closed_form(2.0, 4),
                     Catch::Matchers::WithinAbs(0.0091578194443670901, 1e-15));
    }
    SECTION("stored stage") {
        // Nothing stored at zero coupling: pure atomic vacuum noise.
        REQUIRE(stored_variance_closed_form(1.0, CouplingStrength(0.0), 1) == 0.5);
        REQUIRE(stored_variance_closed_form(2.0, CouplingStrength(0.0), 3) == 0.75);
        REQUIRE_THAT(stored_variance_closed_form(1.0, CouplingStrength(1.5), 1),
                     Catch::Matchers::WithinAbs(0.11323513694473889, 1e-15));
        // Strong coupling reproduces the input form.
        REQUIRE(std::abs(stored_variance_closed_form(1.0, CouplingStrength(6.0), 1) -
                         input_variance_closed_form(1.0, 1)) <= 1e-15);
    }
    SECTION("retrieved stage") {
        for (double kappa : kKappaGrid) {
            REQUIRE_THAT(retrieved_variance_closed_form(0.0, CouplingStrength(kappa), 1),
                         Catch::Matchers::WithinAbs(0.5, 1e-15));
            REQUIRE_THAT(retrieved_variance_closed_form(0.0, CouplingStrength(kappa), 2),
                         Catch::Matchers::WithinAbs(0.75, 1e-15));
        }
        REQUIRE_THAT(retrieved_variance_closed_form(1.0, CouplingStrength(2.5), 1),
                     Catch::Matchers::WithinAbs(0.069335226044477632, 1e-15));
        REQUIRE_THAT(retrieved_variance_closed_form(15.0, CouplingStrength(1.5), 2),
                     Catch::Matchers::WithinAbs(0.14976708943917094, 1e-15));
    }
    SECTION("argument validation") {
        REQUIRE_THROWS_AS(input_variance_closed_form(1.0, 0), ValidationError);
        REQUIRE_THROWS_AS(input_variance_closed_form(1.0, 5), ValidationError);
        REQUIRE_THROWS_AS(
            stored_variance_closed_form(std::nan(""), CouplingStrength(1.0), 1),
            ValidationError);
    }
}

TEST_CASE("protocol reproduces the closed forms on the full grid", "[protocol]") {
    for (double kappa : kKappaGrid) {
        for (double r : kSqueezeGrid) {
            const ProtocolResult result = run_protocol(make_config(kappa, r));
            for (Stage stage : kStages) {
                INFO("kappa=" << kappa << " r=" << r << " stage=" << to_string(stage));
                REQUIRE(result.report(stage).max_deviation <= 1e-12);
            }
        }
    }
}

TEST_CASE("covariance propagation and mode expansion agree at every stage", "[protocol]") {
    for (double kappa : kKappaGrid) {
        for (double r : kSqueezeGrid) {
            const ProtocolResult result = run_protocol(make_config(kappa, r));
            for (Stage stage : kStages) {
                const auto idx = static_cast<std::size_t>(stage_index(stage));
                for (std::size_t i = 0; i < 4; ++i) {
                    REQUIRE(std::abs(result.report(stage).nullifier_variances[i] -
                                     result.oracle_variances[idx][i]) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("protocol spot values", "[protocol]") {
    SECTION("vacuum inputs pass through every stage unchanged") {
        const ProtocolResult result = run_protocol(make_config(1.5, 0.0));
        const std::array<double, 4> expected = {0.5, 0.75, 0.75, 0.5};
        for (Stage stage : kStages) {
            for (std::size_t i = 0; i < 4; ++i) {
                REQUIRE_THAT(result.report(stage).nullifier_variances[i],
                             Catch::Matchers::WithinAbs(expected[i], 1e-13));
            }
        }
    }
    SECTION("retrieved variance at kappa 2.5, r 1") {
        const ProtocolResult result = run_protocol(make_config(2.5, 1.0));
        REQUIRE_THAT(result.report(Stage::Retrieved).nullifier_variances[0],
                     Catch::Matchers::WithinAbs(0.069335226044477632, 1e-13));
    }
    SECTION("zero coupling leaves the carrier vacua untouched") {
        const ProtocolResult result = run_protocol(make_config(0.0, 1.0));
        const std::array<double, 4> expected = {0.5, 0.75, 0.75, 0.5};
        for (std::size_t i = 0; i < 4; ++i) {
            REQUIRE_THAT(result.report(Stage::Stored).nullifier_variances[i],
                         Catch::Matchers::WithinAbs(expected[i], 1e-13));
            REQUIRE_THAT(result.report(Stage::Retrieved).nullifier_variances[i],
                         Catch::Matchers::WithinAbs(expected[i], 1e-13));
        }
    }
}

TEST_CASE("strong squeezing asymptotes at kappa 1.5", "[protocol]") {
    // At r = 15 the covariance carries e^{30}-scale entries, so the stage
    // variances are read through the expansion route.
    const ProtocolResult result = run_protocol(make_config(1.5, 15.0));
    const CouplingStrength kappa(1.5);
    for (int which = 1; which <= 4; ++which) {
        const auto i = static_cast<std::size_t>(which - 1);
        REQUIRE(std::abs(result.oracle_variances[1][i] -
                         stored_variance_closed_form(15.0, kappa, which)) <= 1e-9);
        REQUIRE(std::abs(result.oracle_variances[2][i] -
                         retrieved_variance_closed_form(15.0, kappa, which)) <= 1e-9);
    }
    REQUIRE_THAT(stored_variance_closed_form(15.0, kappa, 1),
                 Catch::Matchers::WithinAbs(0.052699612280974025, 1e-15));
    REQUIRE_THAT(retrieved_variance_closed_form(15.0, kappa, 1),
                 Catch::Matchers::WithinAbs(0.099844726292780629, 1e-15));
}

TEST_CASE("variances only grow from input to stored to retrieved", "[protocol]") {
    for (double r : {0.25, 0.5, 1.0, 2.0, 3.0}) {
        const ProtocolResult result = run_protocol(make_config(1.5, r));
        for (std::size_t i = 0; i < 4; ++i) {
            const double vi = result.report(Stage::Input).nullifier_variances[i];
            const double vs = result.report(Stage::Stored).nullifier_variances[i];
            const double vr = result.report(Stage::Retrieved).nullifier_variances[i];
            REQUIRE(vi < vs);
            REQUIRE(vs < vr);
        }
    }
}

TEST_CASE("at kappa 2.5 all stages nearly coincide", "[protocol]") {
    for (double r = 0.0; r <= 3.0; r += 0.25) {
        const ProtocolResult result = run_protocol(make_config(2.5, r));
        for (std::size_t i = 0; i < 4; ++i) {
            const double vi = result.report(Stage::Input).nullifier_variances[i];
            for (Stage stage : {Stage::Stored, Stage::Retrieved}) {
                REQUIRE(std::abs(result.report(stage).nullifier_variances[i] - vi) <= 0.0029);
            }
        }
    }
}

TEST_CASE("stored correlations approach the ideal transfer", "[protocol]") {
    SECTION("zero coupling keeps the full vacuum penalty") {
        const std::array<double, 4> residuals =
            stored_correlation_residual(make_config(0.0, 1.0));
        const double scale = 1.0 - std::exp(-2.0);
        REQUIRE_THAT(residuals[0], Catch::Matchers::WithinAbs(0.43233235838169365, 1e-13));
        REQUIRE_THAT(residuals[1], Catch::Matchers::WithinAbs(0.75 * scale, 1e-13));
        REQUIRE_THAT(residuals[3], Catch::Matchers::WithinAbs(0.5 * scale, 1e-13));
    }
    SECTION("strong coupling stores almost perfectly") {
        for (double residual : stored_correlation_residual(make_config(5.0, 1.0))) {
            REQUIRE(residual <= 1.05e-11);
        }
    }
    SECTION("vacuum inputs leave no residual") {
        for (double residual : stored_correlation_residual(make_config(0.0, 0.0))) {
            REQUIRE(std::abs(residual) <= 1e-14);
        }
    }
    SECTION("residuals follow the closed form and decrease with coupling") {
        const std::array<double, 4> pref = linear4_prefactors();
        for (double r : kSqueezeGrid) {
            std::array<double, 4> previous{};
            bool have_previous = false;
            for (double kappa : kKappaGrid) {
                const std::array<double, 4> residuals =
                    stored_correlation_residual(make_config(kappa, r));
                const double u = std::exp(-kappa * kappa);
                for (std::size_t i = 0; i < 4; ++i) {
                    const double expected = pref[i] * u * (1.0 - std::exp(-2.0 * r));
                    REQUIRE(std::abs(residuals[i] - expected) <= 1e-12);
                    if (have_previous && r > 0.0) {
                        REQUIRE(residuals[i] < previous[i] + 1e-13);
                    }
                }
                previous = residuals;
                have_previous = true;
            }
        }
    }
}

TEST_CASE("read-out means are the negated, c1-scaled input means", "[protocol]") {
    SECTION("unit displacement at strong coupling flips sign") {
        Eigen::VectorXd d = Eigen::VectorXd::Zero(8);
        d(0) = 1.0;
        REQUIRE(sign_flip_check(CouplingStrength(6.0), d) <= 1e-12);
        // -c1 differs from exact negation by e^{-36}.
        REQUIRE(std::abs(coefficients(CouplingStrength(6.0)).c1 - 1.0) <= 1e-10);
    }
    SECTION("zero coupling transfers no displacement") {
        Eigen::VectorXd d(8);
        d << 1.0, -2.0, 0.5, 0.0, 3.0, 1.0, -1.0, 0.25;
        REQUIRE(sign_flip_check(CouplingStrength(0.0), d) <= 1e-12);
    }
    SECTION("random displacements at several couplings") {
        std::mt19937 rng(71);
        std::uniform_real_distribution<double> pick(-2.0, 2.0);
        for (double kappa : {0.5, 1.0, 1.5, 2.5, 5.0}) {
            Eigen::VectorXd d(8);
            for (int i = 0; i < 8; ++i) {
                d(i) = pick(rng);
            }
            REQUIRE(sign_flip_check(CouplingStrength(kappa), d) <= 1e-12);
        }
    }
    SECTION("wrong displacement length is a shape error") {
        REQUIRE_THROWS_AS(sign_flip_check(CouplingStrength(1.0), Eigen::VectorXd::Zero(6)),
                          ShapeError);
    }
}

TEST_CASE("consistent channel relabeling permutes the reports", "[protocol]") {
    std::mt19937 rng(97);
    std::uniform_real_distribution<double> pick(0.0, 2.0);
    std::vector<int> perm = {0, 1, 2, 3};
    for (int trial = 0; trial < 25; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        Eigen::VectorXd r(4);
        for (int i = 0; i < 4; ++i) {
            r(i) = pick(rng);
        }
        const ProtocolConfig config(CouplingStrength(1.5), SqueezingProfile(r), false);
        const ProtocolResult direct = run_protocol(config);
        const std::array<double, 4> permuted = permuted_retrieved_variances(config, perm);
        for (std::size_t i = 0; i < 4; ++i) {
            REQUIRE(std::abs(permuted[i] -
                             direct.report(Stage::Retrieved).nullifier_variances[i]) <= 1e-12);
        }
    }
}

TEST_CASE("retrieved covariance differs from the input by transfer-loss terms",
          "[protocol]") {
    for (double kappa : kKappaGrid) {
        for (double r : kSqueezeGrid) {
            const ProtocolResult result = run_protocol(make_config(kappa, r, true));
            REQUIRE(result.snapshots.size() == 3);
            const double c1 = coefficients(CouplingStrength(kappa)).c1;
            const double bound = (1.0 - c1 * c1) * std::max(std::exp(2.0 * r) / 4.0, 1.0);
            const double diff =
                (result.stage_marginals[2].cov() - result.stage_marginals[0].cov())
                    .cwiseAbs()
                    .maxCoeff();
            REQUIRE(diff <= bound);
        }
    }
}

TEST_CASE("protocol config JSON loading", "[protocol]") {
    SECTION("scalar r and uniform vector r give identical runs") {
        const ProtocolConfig scalar =
            ProtocolConfig::from_json(nlohmann::json::parse(R"({"kappa": 1.5, "r": 1.0})"));
        const ProtocolConfig vector = ProtocolConfig::from_json(
            nlohmann::json::parse(R"({"kappa": 1.5, "r": [1.0, 1.0, 1.0, 1.0]})"));
        const ProtocolResult a = run_protocol(scalar);
        const ProtocolResult b = run_protocol(vector);
        for (Stage stage : kStages) {
            for (std::size_t i = 0; i < 4; ++i) {
                REQUIRE(a.report(stage).nullifier_variances[i] ==
                        b.report(stage).nullifier_variances[i]);
            }
        }
        REQUIRE_FALSE(scalar.track_stage_snapshots);
    }
    SECTION("snapshots flag") {
        const ProtocolConfig config = ProtocolConfig::from_json(
            nlohmann::json::parse(R"({"kappa": 1.0, "r": 0.5, "snapshots": true})"));
        REQUIRE(config.track_stage_snapshots);
        REQUIRE(run_protocol(config).snapshots.size() == 3);
    }
    SECTION("malformed documents are rejected with the offending field") {
        REQUIRE_THROWS_AS(ProtocolConfig::from_json(nlohmann::json::parse(R"({"r": 1.0})")),
                          ParseError);
        REQUIRE_THROWS_AS(
            ProtocolConfig::from_json(nlohmann::json::parse(R"({"kappa": 1.0})")),
            ParseError);
        REQUIRE_THROWS_AS(ProtocolConfig::from_json(nlohmann::json::parse(
                              R"({"kappa": 1.0, "r": [1.0, 2.0]})")),
                          ParseError);
        REQUIRE_THROWS_AS(ProtocolConfig::from_json(nlohmann::json::parse(
                              R"({"kappa": 1.0, "r": 1.0, "mode": 3})")),
                          ParseError);
        REQUIRE_THROWS_AS(ProtocolConfig::from_json(nlohmann::json::parse(
                              R"({"kappa": -2.0, "r": 1.0})")),
                          ValidationError);
    }
    SECTION("syntax errors carry line and column") {
        try {
            parse_json_text("{\n  \"kappa\": 1.0,\n  r: 1.0\n}", "config.json");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            REQUIRE(std::string(e.what()).find("config.json:3:") != std::string::npos);
        }
    }
}

TEST_CASE("entanglement witness report", "[witness]") {
    const NullifierSet nulls = nullifiers(GraphSpec::chain(4));
    std::vector<Bipartition> bipartitions;
    for (int v = 1; v <= 4; ++v) {
        bipartitions.push_back(Bipartition::against_rest({v}, 4));
    }

    SECTION("bound for the first adjacent pair across {1}|{2,3,4} is 1") {
        REQUIRE(witness_bound(nulls.combinations[0], nulls.combinations[1],
                              bipartitions[0]) == 1.0);
    }
    SECTION("bounds match a direct evaluation over the coefficient lists") {
        for (auto [a, b] : nulls.graph.edges()) {
            const QuadratureCombination& u = nulls.combinations[static_cast<std::size_t>(a - 1)];
            const QuadratureCombination& v = nulls.combinations[static_cast<std::size_t>(b - 1)];
            for (const Bipartition& partition : bipartitions) {
                double sum_a = 0.0;
                double sum_b = 0.0;
                for (int j = 1; j <= 4; ++j) {
                    const double share =
                        0.5 * (u.coefficients()(2 * (j - 1)) * v.coefficients()(2 * j - 1) -
                               u.coefficients()(2 * j - 1) * v.coefficients()(2 * (j - 1)));
                    const bool in_a = std::find(partition.side_a.begin(),
                                                partition.side_a.end(),
                                                j) != partition.side_a.end();
                    (in_a ? sum_a : sum_b) += share;
                }
                REQUIRE(witness_bound(u, v, partition) ==
                        std::abs(sum_a) + std::abs(sum_b));
            }
        }
    }
    SECTION("vacuum-level cluster noise is not witnessed") {
        const GaussianState cluster = build_linear4_cluster(SqueezingProfile::uniform(0.0, 4));
        const EntanglementReport report = entanglement_report(cluster, nulls, bipartitions);
        REQUIRE(report.pairs.size() == 3);
        REQUIRE_FALSE(report.any_witnessed());
    }
    SECTION("a strongly squeezed retrieved state is witnessed everywhere") {
        const ProtocolResult result = run_protocol(make_config(2.5, 2.0));
        const EntanglementReport report =
            entanglement_report(result.stage_marginals[2], nulls, bipartitions);
        REQUIRE(report.all_pairs_witnessed());
        // Every split that actually separates a pair flags it here.
        for (const PairWitness& pair : report.pairs) {
            for (const WitnessEntry& entry : pair.entries) {
                if (entry.bound > 0.0) {
                    REQUIRE(entry.witnessed);
                }
            }
        }
    }
    SECTION("state dimension must match the graph") {
        const GaussianState small = vacuum_state(QuadratureOrdering::lights(2));
        REQUIRE_THROWS_AS(entanglement_report(small, nulls, bipartitions), ShapeError);
    }
    SECTION("bipartitions must split the vertex set") {
        REQUIRE_THROWS_AS(Bipartition::against_rest({5}, 4), ValidationError);
        REQUIRE_THROWS_AS(Bipartition::against_rest({1, 2, 3, 4}, 4), ValidationError);
        const GaussianState cluster = build_linear4_cluster(SqueezingProfile::uniform(0.0, 4));
        const Bipartition wrong{{1, 2}, {3}};
        REQUIRE_THROWS_AS(entanglement_report(cluster, nulls, {wrong}), ValidationError);
    }
}

TEST_CASE("protocol ordering lays out light, atom and read-out channels", "[protocol]") {
    const QuadratureOrdering ordering = protocol_ordering();
    REQUIRE(ordering.n_modes() == 12);
    REQUIRE(ordering.x_index(light(1)) == 0);
    REQUIRE(ordering.x_index(atom(1)) == 8);
    REQUIRE(ordering.x_index(readout(1)) == 16);
    REQUIRE(stage_modes(Stage::Stored) ==
            std::vector<ModeLabel>{atom(1), atom(2), atom(3), atom(4)});
}
