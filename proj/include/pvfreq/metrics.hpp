#pragma once

#include "pvfreq/sim_engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pvfreq {

enum class EventDirection { under, over };

struct FrequencyMetrics {
    double nadir = 0.0;              // Hz; the maximum for overfrequency events
    double nadir_time = 0.0;         // s after the event
    double max_abs_rocof = 0.0;      // Hz/s
    double settling_frequency = 0.0; // Hz, mean over the settling window
};

struct FrequencyMetricOptions {
    double settling_window = 5.0; // s, taken at the end of the trace
    /// Inferred from the larger excursion when absent.
    std::optional<EventDirection> direction;
};

/// Post-event samples are those with t > t_event.
FrequencyMetrics compute_frequency_metrics(const Trace& trace, double t_event,
                                           const FrequencyMetricOptions& opts = {});

/// Largest |rocof| over samples with t_from < t <= t_to.
double max_abs_rocof_between(const Trace& trace, double t_from, double t_to);

/// Sampled scalar response (e.g. plant output in plant pu).
struct SampledResponse {
    std::vector<double> t;
    std::vector<double> y;
};

struct StepResponseMetrics {
    double reaction_time = 0.0; // s after the step
    double rise_time = 0.0;     // s, 10% -> 90%
    double settling_time = 0.0; // s after the step, last entry into the band
    double overshoot = 0.0;     // fraction of the final change
    double final_value = 0.0;
};

struct StepMetricOptions {
    double reaction_fraction = 0.02;
    double rise_low = 0.1;
    double rise_high = 0.9;
    double settling_band = 0.025;
    double final_fraction = 0.1;    // tail of the horizon averaged for the final value
    double settle_tolerance = 0.005; // allowed tail spread, fraction of the change
    double min_change = 1e-6;
};

/// Threshold crossings are interpolated linearly between samples. Throws
/// NoResponseError or NotSettledError.
StepResponseMetrics compute_step_response_metrics(const SampledResponse& response,
                                                  double step_time,
                                                  const StepMetricOptions& opts = {});

struct MetricsRow {
    std::string scenario;
    ControllerKind controller = ControllerKind::none;
    FrequencyMetrics metrics;
};

/// One row per controller in the order none, droop, inertia, combined.
std::vector<MetricsRow> compare_controllers(const Scenario& scenario, const SimConfig& sim);

} // namespace pvfreq
