#pragma once

#include "pvfreq/control_blocks.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace pvfreq {

/// Proportional frequency-watt path: deadband -> lag -> 1/r gain.
/// Output is in plant-pu, i.e. on the plant nameplate (P_max - P_min, P_min = 0).
struct DroopConfig {
    double r_droop = 0.05;
    Deadband deadband{0.0006};
    double t_lag = 0.1;

    void validate() const;
};

/// Synthetic inertia path: deadband -> lag -> gain -> washout.
/// k_inertia is in pu*s on the plant base (2*H of the emulated mass).
struct InertiaConfig {
    double k_inertia = 10.0;
    Deadband deadband{0.0};
    double t_lag = 0.02;
    double t_washout = 0.05;
    bool recovery_clamp = false;

    void validate() const;
};

/// Equivalent PV plant: headroom envelope, inverter lag and system-base scaling.
struct PVPlantConfig {
    double c_pv = 0.4;            // plant nameplate / system base
    double headroom = 0.05;       // fraction of available power held in reserve
    double available_power = 1.0; // plant-pu
    double t_inv = 0.05;          // s
    std::optional<double> rate_limit;

    void validate() const;

    double operating_point() const { return available_power * (1.0 - headroom); }
    double up_reserve() const { return headroom * available_power; }
    /// Command window [-P0, h * available] plus the optional slew limit.
    LimitSpec limits() const;
};

enum class ControllerKind { none, droop, inertia, combined };

inline constexpr ControllerKind kAllControllers[] = {
    ControllerKind::none, ControllerKind::droop, ControllerKind::inertia,
    ControllerKind::combined};

std::string_view to_string(ControllerKind kind);
ControllerKind parse_controller_kind(std::string_view name);

constexpr bool has_droop(ControllerKind k) {
    return k == ControllerKind::droop || k == ControllerKind::combined;
}
constexpr bool has_inertia(ControllerKind k) {
    return k == ControllerKind::inertia || k == ControllerKind::combined;
}

struct ControllerSpec {
    ControllerKind kind = ControllerKind::none;
    DroopConfig droop;
    InertiaConfig inertia;

    void validate() const;
};

// Discrete-time (zero-order hold) controllers, one call per sample.

struct DroopState {
    double lag = 0.0;
};

struct InertiaState {
    double lag = 0.0;
    double washout = 0.0;
};

struct CombinedState {
    DroopState droop;
    InertiaState inertia;
};

struct CombinedOutput {
    double droop = 0.0;
    double inertia = 0.0;
    double total = 0.0;
};

struct PlantState {
    double limited_cmd = 0.0; // last command after limits, plant-pu
    double output = 0.0;      // inverter output, plant-pu
};

double droop_step(const DroopConfig& cfg, double df, double dt, DroopState& state);
double inertia_step(const InertiaConfig& cfg, double df, double dt, InertiaState& state);
CombinedOutput combined_step(const DroopConfig& droop_cfg, const InertiaConfig& inertia_cfg,
                             double df, double dt, CombinedState& state);

/// Limits the command to the headroom envelope, slews it, passes it through
/// the inverter lag and returns the change in plant output on system base.
double plant_apply(const PVPlantConfig& cfg, double cmd, double dt, PlantState& state);

// Continuous-time pieces shared with the ODE engine.

/// Recovery clamp: while df < 0 the inertia output may not go negative,
/// while df > 0 it may not go positive.
double recovery_clamp(double cmd, double df);

double droop_output(const DroopConfig& cfg, double lag_state);
double inertia_output(const InertiaConfig& cfg, double df, double lag_state,
                      double washout_state);

} // namespace pvfreq
