#pragma once

#include "pvfreq/pv_controller.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pvfreq {

/// Aggregated primary-response fleet: a single first-order turbine-governor
/// path on the share `kappa` of synchronous generation that responds.
struct GovernorFleet {
    double kappa = 0.3;
    double r_gov = 0.05;
    double t_gov = 8.0;
    double reserve_limit = 0.1;

    void validate() const;
};

/// Single-bus equivalent of an interconnection. All powers in system pu.
struct SystemParams {
    double f0 = 60.0;
    double h_sys = 2.0;
    double d_load = 1.0;
    PVPlantConfig pv;
    GovernorFleet governor;

    void validate() const;
};

/// Step change in generation/load balance. Positive dp is a loss of
/// generation (underfrequency).
struct Contingency {
    double dp = 0.009;
    double t_event = 1.0;

    void validate() const;
};

/// d(df)/dt of the aggregated swing equation.
double swing_rhs(const SystemParams& params, double df, double dp_mech, double dp_pv,
                 double dp_event);

/// dP_m/dt of the governor path; clamping is the integrator's job.
double governor_rhs(const GovernorFleet& fleet, double df, double dp_mech);

/// Analytic settling deviation with deadbands neglected and no limits hit.
double steady_state_deviation(const SystemParams& params, double dp, bool include_pv_droop,
                              double r_droop = 0.05);

struct Preset {
    std::string name;
    SystemParams system;
    Contingency contingency;
};

std::span<const std::string_view> preset_names();
Preset preset_scenario(std::string_view name);

} // namespace pvfreq
