#pragma once

#include "pvfreq/metrics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pvfreq {

/// Step-test settings and grading limits. The limit values are stand-ins
/// for the NERC guideline numbers and are meant to be configured.
struct ComplianceThresholds {
    double step_magnitude = 0.002; // pu of f0 (0.12 Hz at 60 Hz)
    double max_reaction = 0.5;     // s
    double max_rise = 4.0;         // s
    double max_settling = 10.0;    // s
    double max_overshoot = 0.05;   // fraction of final change
    double settling_band = 0.025;  // fraction of final change
    double step_time = 1.0;        // s
    double t_end = 20.0;           // s

    void validate() const;
};

/// Open-loop response of controller + plant to an underfrequency step of
/// `step_magnitude` at `step_time`. The recorded signal is the plant output
/// in plant pu. Only dt and sample_interval are taken from `sim`.
SampledResponse run_step_test(const ControllerSpec& controller, const PVPlantConfig& plant,
                              const ComplianceThresholds& thresholds, const SimConfig& sim);

struct CriterionResult {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    bool pass = false;
};

struct ComplianceReport {
    std::optional<StepResponseMetrics> metrics;
    std::vector<CriterionResult> criteria;
    bool pass = false;
    std::string reason; // set when metrics could not be computed
    ComplianceThresholds thresholds;
};

ComplianceReport evaluate_compliance(const SampledResponse& response,
                                     const ComplianceThresholds& thresholds);

/// Fixed-width text table, one line per criterion plus an overall line.
std::string format_report(const ComplianceReport& report);

} // namespace pvfreq
