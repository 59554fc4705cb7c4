#include "pvfreq/grid_dynamics.hpp"

#include "pvfreq/error.hpp"

#include <array>
#include <cmath>

namespace pvfreq {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError(std::string(what) + " must be > 0");
    }
}

constexpr std::array<std::string_view, 2> kPresetNames{"ei80", "ercot80"};

} // namespace

void GovernorFleet::validate() const {
    if (!(kappa >= 0.0 && kappa <= 1.0)) {
        throw ValidationError("system.governor.kappa must be in [0, 1]");
    }
    require_positive(r_gov, "system.governor.r_gov");
    require_positive(t_gov, "system.governor.t_gov");
    if (!(reserve_limit >= 0.0) || !std::isfinite(reserve_limit)) {
        throw ValidationError("system.governor.reserve_limit must be >= 0");
    }
}

void SystemParams::validate() const {
    require_positive(f0, "system.f0");
    require_positive(h_sys, "system.h_sys");
    if (!(d_load >= 0.0) || !std::isfinite(d_load)) {
        throw ValidationError("system.d_load must be >= 0");
    }
    pv.validate();
    governor.validate();
}

void Contingency::validate() const {
    if (!std::isfinite(dp)) {
        throw ValidationError("contingency.dp must be finite");
    }
    if (!(t_event >= 0.0) || !std::isfinite(t_event)) {
        throw ValidationError("contingency.t_event must be >= 0");
    }
}

double swing_rhs(const SystemParams& params, double df, double dp_mech, double dp_pv,
                 double dp_event) {
    return (dp_mech + dp_pv - dp_event - params.d_load * df) / (2.0 * params.h_sys);
}

double governor_rhs(const GovernorFleet& fleet, double df, double dp_mech) {
    return (-fleet.kappa * df / fleet.r_gov - dp_mech) / fleet.t_gov;
}

double steady_state_deviation(const SystemParams& params, double dp, bool include_pv_droop,
                              double r_droop) {
    double stiffness = params.governor.kappa / params.governor.r_gov + params.d_load;
    if (include_pv_droop) {
        stiffness += params.pv.c_pv / r_droop;
    }
    if (!(stiffness > 0.0)) {
        throw ValidationError("steady state undefined: zero frequency stiffness");
    }
    if (dp == 0.0) {
        return 0.0;
    }
    return -dp / stiffness;
}

std::span<const std::string_view> preset_names() { return kPresetNames; }

Preset preset_scenario(std::string_view name) {
    Preset p;
    p.name = std::string(name);
    p.system.governor = GovernorFleet{0.3, 0.05, 8.0, 0.1};
    p.system.pv.c_pv = 0.4;
    p.system.pv.t_inv = 0.05;
    if (name == "ei80") {
        // Large, comparatively stiff grid: shallow event.
        p.system.h_sys = 2.0;
        p.system.d_load = 1.0;
        p.system.pv.headroom = 0.05;
        p.contingency = Contingency{0.009, 1.0};
        return p;
    }
    if (name == "ercot80") {
        // Small low-inertia grid: deep, fast event.
        p.system.h_sys = 1.5;
        p.system.d_load = 1.0;
        p.system.pv.headroom = 0.10;
        p.contingency = Contingency{0.04, 1.0};
        return p;
    }
    std::string valid;
    for (auto n : kPresetNames) {
        valid += valid.empty() ? "" : ", ";
        valid += n;
    }
    throw ValidationError("unknown preset '" + std::string(name) + "' (valid presets: " + valid +
                          ")");
}

} // namespace pvfreq
