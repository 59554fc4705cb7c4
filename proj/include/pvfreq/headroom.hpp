#pragma once

#include "pvfreq/metrics.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace pvfreq {

struct HeadroomQuery {
    Scenario scenario;
    ControllerKind controller = ControllerKind::combined;
    double target_nadir = 59.5; // Hz
    double h_max = 0.5;
    double tolerance = 0.001;

    void validate() const;
};

struct HeadroomResult {
    double headroom = 0.0;
    double nadir = 0.0; // Hz, at the returned headroom
    int runs = 0;       // simulations performed, probe included
};

/// Nadir of one run with the PV headroom overridden.
double nadir_at_headroom(const Scenario& scenario, ControllerKind controller, double headroom,
                         const SimConfig& sim);

/// Smallest headroom (within tolerance) whose nadir meets the target.
/// Probes monotonicity on {0, h_max/2, h_max} first, then bisects.
/// Throws UnattainableError or NonMonotoneError.
HeadroomResult min_headroom_for_nadir(const HeadroomQuery& query, const SimConfig& sim);

struct SweepRow {
    double value = 0.0;
    FrequencyMetrics metrics;
};

/// One metrics row per value in input order. Runs execute concurrently.
std::vector<SweepRow> sweep_param(const Scenario& scenario, ControllerKind controller,
                                  std::string_view param_path, std::span<const double> values,
                                  const SimConfig& sim);

} // namespace pvfreq
