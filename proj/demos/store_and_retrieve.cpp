// Minimal library walkthrough: build the four-mode linear cluster, push it
// through the atomic memory at a chosen coupling, and print the nullifier
// variances of each stage next to their closed forms.

#include <cstdio>

#include "cvmem/channel.hpp"
#include "cvmem/protocol.hpp"

int main() {
    const cvmem::CouplingStrength kappa(2.5);
    const cvmem::ProtocolConfig config(kappa, cvmem::SqueezingProfile::uniform(1.0, 4), false);
    const cvmem::ProtocolResult result = cvmem::run_protocol(config);

    const cvmem::ChannelCoefficients co = cvmem::coefficients(kappa);
    std::printf("kappa = %.3f   C1 = %.6f  C2 = %.6f  C3 = %.6f\n\n", kappa.value(), co.c1,
                co.c2, co.c3);
    std::printf("%-10s %-12s %-12s %-12s %-12s  max |sim - closed|\n", "stage", "V1", "V2",
                "V3", "V4");
    for (cvmem::Stage stage : cvmem::kStages) {
        const cvmem::StageReport& report = result.report(stage);
        std::printf("%-10s %-12.8f %-12.8f %-12.8f %-12.8f  %.3g\n",
                    cvmem::to_string(stage).c_str(), report.nullifier_variances[0],
                    report.nullifier_variances[1], report.nullifier_variances[2],
                    report.nullifier_variances[3], report.max_deviation);
    }
    return 0;
}
