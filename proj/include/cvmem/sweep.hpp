#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cvmem/channel.hpp"
#include "cvmem/csv.hpp"
#include "cvmem/errors.hpp"
#include "cvmem/protocol.hpp"
#include "cvmem/svg.hpp"

namespace cvmem {

enum class SweepVariable { Kappa, R };

/// Grid over one swept parameter; `fixed` carries the parameters that stay
/// constant (a variance sweep needs fixed["kappa"]).
struct SweepSpec {
    SweepVariable variable = SweepVariable::Kappa;
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    std::map<std::string, double> fixed;
    std::set<Stage> stages = {Stage::Input, Stage::Stored, Stage::Retrieved};

    void validate() const {
        if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
            throw ValidationError("sweep bounds must be finite");
        }
        if (start > stop) {
            throw ValidationError("sweep start exceeds stop");
        }
        if (step <= 0.0) {
            throw ValidationError("sweep step must be positive");
        }
        if ((stop - start) / step > 1e6) {
            throw ValidationError("sweep would exceed 10^6 grid points");
        }
    }

    std::vector<double> grid() const {
        validate();
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1.0 + 1e-9));
        std::vector<double> points;
        points.reserve(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i) {
            points.push_back(start + static_cast<double>(i) * step);
        }
        return points;
    }
};

/// One grid point: abscissa plus named values, in emission order.
struct SweepRecord {
    double abscissa = 0.0;
    std::vector<std::pair<std::string, double>> series;
};

/// Channel coefficients c1, c2, c3 over a coupling-strength grid.
inline std::vector<SweepRecord> sweep_coefficients(const SweepSpec& spec) {
    if (spec.variable != SweepVariable::Kappa) {
        throw UsageError("coefficient sweeps run over the coupling strength");
    }
    std::vector<SweepRecord> records;
    for (double kappa : spec.grid()) {
        const ChannelCoefficients co = coefficients(CouplingStrength(kappa));
        records.push_back({kappa, {{"C1", co.c1}, {"C2", co.c2}, {"C3", co.c3}}});
    }
    return records;
}

/// Simulated nullifier variances per stage over a squeezing grid at fixed
/// coupling. Series are named "<stage>.V<i>".
inline std::vector<SweepRecord> sweep_variances(const SweepSpec& spec) {
    if (spec.variable != SweepVariable::R) {
        throw UsageError("variance sweeps run over the squeezing parameter");
    }
    const auto it = spec.fixed.find("kappa");
    if (it == spec.fixed.end()) {
        throw UsageError("variance sweeps need fixed[\"kappa\"]");
    }
    const CouplingStrength kappa(it->second);
    std::vector<SweepRecord> records;
    for (double r : spec.grid()) {
        const ProtocolConfig config(kappa, SqueezingProfile::uniform(r, 4), false);
        const ProtocolResult result = run_protocol(config);
        SweepRecord record;
        record.abscissa = r;
        for (Stage stage : kStages) {
            if (spec.stages.count(stage) == 0) {
                continue;
            }
            for (int i = 0; i < 4; ++i) {
                record.series.emplace_back(
                    to_string(stage) + ".V" + std::to_string(i + 1),
                    result.report(stage).nullifier_variances[static_cast<std::size_t>(i)]);
            }
        }
        records.push_back(std::move(record));
    }
    return records;
}

/// CSV with columns kappa,C1,C2,C3.
inline CsvTable coefficient_csv(const std::vector<SweepRecord>& records) {
    CsvTable table;
    table.header = {"kappa", "C1", "C2", "C3"};
    for (const SweepRecord& record : records) {
        std::vector<std::string> row = {format_double(record.abscissa)};
        for (const auto& [name, value] : record.series) {
            row.push_back(format_double(value));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

/// CSV with columns r,stage,V1,V2,V3,V4 and one row per (r, stage).
inline CsvTable variance_csv(const std::vector<SweepRecord>& records,
                             const std::set<Stage>& stages) {
    CsvTable table;
    table.header = {"r", "stage", "V1", "V2", "V3", "V4"};
    for (const SweepRecord& record : records) {
        for (Stage stage : kStages) {
            if (stages.count(stage) == 0) {
                continue;
            }
            std::vector<std::string> row = {format_double(record.abscissa), to_string(stage)};
            const std::string prefix = to_string(stage) + ".V";
            for (int i = 1; i <= 4; ++i) {
                for (const auto& [name, value] : record.series) {
                    if (name == prefix + std::to_string(i)) {
                        row.push_back(format_double(value));
                    }
                }
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

inline Panel coefficient_panel(const std::vector<SweepRecord>& records) {
    Panel panel;
    panel.title = "transfer coefficients";
    panel.x_label = "kappa";
    panel.y_label = "coefficient";
    panel.series = {{"C1", {}, {}}, {"C2", {}, {}}, {"C3", {}, {}}};
    for (const SweepRecord& record : records) {
        for (std::size_t s = 0; s < 3; ++s) {
            panel.series[s].x.push_back(record.abscissa);
            panel.series[s].y.push_back(record.series[s].second);
        }
    }
    return panel;
}

/// One panel per coupling value; each stage contributes its V1 and V2 curves
/// (V4 and V3 coincide with them by symmetry).
inline Panel variance_panel(const std::vector<SweepRecord>& records, double kappa,
                            const std::set<Stage>& stages) {
    Panel panel;
    panel.title = "kappa = " + format_double(kappa);
    panel.x_label = "r";
    panel.y_label = "nullifier variance";
    for (Stage stage : kStages) {
        if (stages.count(stage) == 0) {
            continue;
        }
        for (int i : {1, 2}) {
            Series series;
            series.name = to_string(stage) + ".V" + std::to_string(i);
            const std::string key = series.name;
            for (const SweepRecord& record : records) {
                for (const auto& [name, value] : record.series) {
                    if (name == key) {
                        series.x.push_back(record.abscissa);
                        series.y.push_back(value);
                    }
                }
            }
            panel.series.push_back(std::move(series));
        }
    }
    return panel;
}

} // namespace cvmem
