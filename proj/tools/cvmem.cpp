// Command line front end: invariant verification, parameter sweeps with
// CSV/SVG emission, and single protocol runs with JSON reports.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvmem/channel.hpp"
#include "cvmem/csv.hpp"
#include "cvmem/errors.hpp"
#include "cvmem/json_io.hpp"
#include "cvmem/protocol.hpp"
#include "cvmem/svg.hpp"
#include "cvmem/sweep.hpp"
#include "cvmem/verify.hpp"
#include "cvmem/witness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::set<cvmem::Stage> parse_stages(const std::vector<std::string>& names) {
    if (names.empty()) {
        return {cvmem::Stage::Input, cvmem::Stage::Stored, cvmem::Stage::Retrieved};
    }
    std::set<cvmem::Stage> stages;
    for (const std::string& name : names) {
        if (name == "input") {
            stages.insert(cvmem::Stage::Input);
        } else if (name == "stored") {
            stages.insert(cvmem::Stage::Stored);
        } else if (name == "retrieved") {
            stages.insert(cvmem::Stage::Retrieved);
        } else {
            throw cvmem::UsageError("unknown stage '" + name +
                                    "' (expected input, stored or retrieved)");
        }
    }
    return stages;
}

/// out.csv -> out.kappa1.5.csv when several coupling values share one sweep.
std::string with_kappa_suffix(const std::string& path, double kappa) {
    const std::size_t dot = path.find_last_of('.');
    const std::size_t slash = path.find_last_of('/');
    const std::string tag = ".kappa" + cvmem::format_double(kappa);
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path + tag;
    }
    return path.substr(0, dot) + tag + path.substr(dot);
}

int run_verify(const std::optional<double>& tol, bool inject, std::uint32_t seed) {
    cvmem::VerifyOptions options;
    options.tolerance_override = tol;
    options.inject_network_sign_error = inject;
    options.seed = seed;
    const cvmem::VerificationReport report = cvmem::run_verification(options);
    cvmem::print_report(std::cout, report);
    return report.all_passed() ? kExitOk : kExitCheckFailure;
}

int run_sweep_coefficients(double kappa_max, double step, const std::string& out_csv,
                           const std::string& out_svg) {
    cvmem::SweepSpec spec;
    spec.variable = cvmem::SweepVariable::Kappa;
    spec.start = 0.0;
    spec.stop = kappa_max;
    spec.step = step;
    const std::vector<cvmem::SweepRecord> records = cvmem::sweep_coefficients(spec);
    cvmem::write_csv(out_csv, cvmem::coefficient_csv(records));
    std::cout << "wrote " << out_csv << " (" << records.size() << " rows)\n";
    if (!out_svg.empty()) {
        cvmem::write_svg(out_svg, {cvmem::coefficient_panel(records)});
        std::cout << "wrote " << out_svg << "\n";
    }
    return kExitOk;
}

int run_sweep_variances(const std::vector<double>& kappas, double r_max, double step,
                        const std::vector<std::string>& stage_names,
                        const std::string& out_csv, const std::string& out_svg) {
    if (kappas.empty()) {
        throw cvmem::UsageError("sweep-variances needs --kappa");
    }
    if (kappas.size() > 2) {
        throw cvmem::UsageError("sweep-variances accepts at most two coupling values");
    }
    const std::set<cvmem::Stage> stages = parse_stages(stage_names);
    std::vector<cvmem::Panel> panels;
    for (double kappa : kappas) {
        cvmem::SweepSpec spec;
        spec.variable = cvmem::SweepVariable::R;
        spec.start = 0.0;
        spec.stop = r_max;
        spec.step = step;
        spec.fixed["kappa"] = kappa;
        spec.stages = stages;
        const std::vector<cvmem::SweepRecord> records = cvmem::sweep_variances(spec);
        const std::string path =
            kappas.size() == 1 ? out_csv : with_kappa_suffix(out_csv, kappa);
        cvmem::write_csv(path, cvmem::variance_csv(records, stages));
        std::cout << "wrote " << path << " (" << records.size() << " grid points)\n";
        panels.push_back(cvmem::variance_panel(records, kappa, stages));
    }
    if (!out_svg.empty()) {
        cvmem::write_svg(out_svg, panels);
        std::cout << "wrote " << out_svg << "\n";
    }
    return kExitOk;
}

nlohmann::json witness_json(const cvmem::EntanglementReport& report) {
    nlohmann::json out = nlohmann::json::array();
    for (const cvmem::PairWitness& pair : report.pairs) {
        nlohmann::json entry;
        entry["pair"] = {pair.vertex_a, pair.vertex_b};
        entry["variance_sum"] = pair.variance_sum;
        entry["bipartitions"] = nlohmann::json::array();
        for (const cvmem::WitnessEntry& w : pair.entries) {
            entry["bipartitions"].push_back({{"side_a", w.partition.side_a},
                                             {"side_b", w.partition.side_b},
                                             {"bound", w.bound},
                                             {"witnessed", w.witnessed}});
        }
        out.push_back(std::move(entry));
    }
    return out;
}

int run_protocol_command(const std::string& config_path, const std::string& report_path) {
    const cvmem::ProtocolConfig config =
        cvmem::ProtocolConfig::from_json(cvmem::parse_json_file(config_path));
    const cvmem::ProtocolResult result = cvmem::run_protocol(config);
    const cvmem::ChannelCoefficients co = cvmem::coefficients(config.kappa);
    const cvmem::NullifierSet nulls = cvmem::nullifiers(cvmem::GraphSpec::chain(4));
    std::vector<cvmem::Bipartition> bipartitions;
    for (int v = 1; v <= 4; ++v) {
        bipartitions.push_back(cvmem::Bipartition::against_rest({v}, 4));
    }

    nlohmann::json report;
    report["kappa"] = config.kappa.value();
    report["r"] = {config.profile[0], config.profile[1], config.profile[2],
                   config.profile[3]};
    report["coefficients"] = {{"C1", co.c1}, {"C2", co.c2}, {"C3", co.c3}};
    report["stages"] = nlohmann::json::array();
    for (cvmem::Stage stage : cvmem::kStages) {
        const cvmem::StageReport& sr = result.report(stage);
        const std::size_t idx = static_cast<std::size_t>(cvmem::stage_index(stage));
        nlohmann::json stage_json;
        stage_json["stage"] = cvmem::to_string(stage);
        stage_json["nullifier_variances"] = sr.nullifier_variances;
        stage_json["closed_form_variances"] = sr.closed_form_variances;
        stage_json["max_deviation"] = sr.max_deviation;
        stage_json["witness"] =
            witness_json(cvmem::entanglement_report(result.stage_marginals[idx], nulls,
                                                    bipartitions));
        report["stages"].push_back(std::move(stage_json));
    }

    cvmem::write_text_file(report_path, report.dump(2) + "\n");
    std::cout << "wrote " << report_path << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian simulator for storing a four-mode linear cluster state in "
                 "atomic ensembles and retrieving it again"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "Run the full invariant suite");
    std::optional<double> tol;
    bool inject = false;
    std::uint32_t seed = 20110616;
    verify->add_option("--tol", tol, "Override every check tolerance");
    verify->add_option("--seed", seed, "Seed for randomized checks");
    verify
        ->add_flag("--inject-sign-defect", inject,
                   "Testing hook: corrupt one sign in the cluster network table")
        ->group("");

    auto* sweep_co = app.add_subcommand(
        "sweep-coefficients", "Transfer coefficients C1, C2, C3 over the coupling strength");
    double kappa_max = 3.0;
    double co_step = 0.01;
    std::string co_out;
    std::string co_svg;
    sweep_co->add_option("--kappa", kappa_max, "Upper end of the coupling grid (from 0)");
    sweep_co->add_option("--step", co_step, "Grid step");
    sweep_co->add_option("--out", co_out, "CSV output path (kappa,C1,C2,C3)")->required();
    sweep_co->add_option("--svg", co_svg, "Optional SVG plot path");

    auto* sweep_var = app.add_subcommand(
        "sweep-variances", "Stage nullifier variances over the squeezing parameter");
    std::vector<double> kappas;
    double r_max = 3.0;
    double var_step = 0.05;
    std::vector<std::string> stage_names;
    std::string var_out;
    std::string var_svg;
    sweep_var
        ->add_option("--kappa", kappas,
                     "Fixed coupling strength; give two values for side-by-side panels")
        ->delimiter(',');
    sweep_var->add_option("--r-max", r_max, "Upper end of the squeezing grid (from 0)");
    sweep_var->add_option("--step", var_step, "Grid step");
    sweep_var->add_option("--stages", stage_names, "Subset of input,stored,retrieved")
        ->delimiter(',');
    sweep_var->add_option("--out", var_out, "CSV output path (r,stage,V1,V2,V3,V4)")
        ->required();
    sweep_var->add_option("--svg", var_svg, "Optional SVG plot path");

    auto* protocol = app.add_subcommand(
        "protocol", "Run one storage-and-retrieval protocol and write a JSON report");
    std::string config_path;
    std::string report_path;
    protocol->add_option("--config", config_path, "JSON config {kappa, r, snapshots}")
        ->required();
    protocol->add_option("--out", report_path, "JSON report output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (verify->parsed()) {
            return run_verify(tol, inject, seed);
        }
        if (sweep_co->parsed()) {
            return run_sweep_coefficients(kappa_max, co_step, co_out, co_svg);
        }
        if (sweep_var->parsed()) {
            return run_sweep_variances(kappas, r_max, var_step, stage_names, var_out, var_svg);
        }
        if (protocol->parsed()) {
            return run_protocol_command(config_path, report_path);
        }
    } catch (const cvmem::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const cvmem::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cvmem::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
