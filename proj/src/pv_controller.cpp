#include "pvfreq/pv_controller.hpp"

#include "pvfreq/error.hpp"

#include <algorithm>
#include <cmath>

namespace pvfreq {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || std::isnan(v)) {
        throw ValidationError(std::string(what) + " must be > 0");
    }
}

} // namespace

void DroopConfig::validate() const {
    require_positive(r_droop, "controller.droop.r");
    require_positive(t_lag, "controller.droop.t_lag");
    if (!(deadband.width >= 0.0) || !std::isfinite(deadband.width)) {
        throw ValidationError("controller.droop.deadband must be >= 0");
    }
}

void InertiaConfig::validate() const {
    if (!(k_inertia >= 0.0) || !std::isfinite(k_inertia)) {
        throw ValidationError("controller.inertia.k must be >= 0");
    }
    require_positive(t_lag, "controller.inertia.t_lag");
    require_positive(t_washout, "controller.inertia.t_washout");
    if (!(deadband.width >= 0.0) || !std::isfinite(deadband.width)) {
        throw ValidationError("controller.inertia.deadband must be >= 0");
    }
}

void PVPlantConfig::validate() const {
    require_positive(c_pv, "system.pv.c_pv");
    if (!(headroom >= 0.0 && headroom < 1.0)) {
        throw ValidationError("system.pv.headroom must be in [0, 1)");
    }
    require_positive(available_power, "system.pv.available_power");
    require_positive(t_inv, "system.pv.t_inv");
    if (rate_limit) {
        require_positive(*rate_limit, "system.pv.rate_limit");
    }
}

LimitSpec PVPlantConfig::limits() const {
    return LimitSpec{up_reserve(), -operating_point(), rate_limit};
}

std::string_view to_string(ControllerKind kind) {
    switch (kind) {
    case ControllerKind::none: return "none";
    case ControllerKind::droop: return "droop";
    case ControllerKind::inertia: return "inertia";
    case ControllerKind::combined: return "combined";
    }
    return "none";
}

ControllerKind parse_controller_kind(std::string_view name) {
    for (auto k : kAllControllers) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw ValidationError("unknown controller kind '" + std::string(name) +
                          "' (valid: none, droop, inertia, combined)");
}

void ControllerSpec::validate() const {
    droop.validate();
    inertia.validate();
}

double recovery_clamp(double cmd, double df) {
    if (df < 0.0) {
        return std::max(cmd, 0.0);
    }
    if (df > 0.0) {
        return std::min(cmd, 0.0);
    }
    return cmd;
}

double droop_output(const DroopConfig& cfg, double lag_state) {
    return -lag_state / cfg.r_droop;
}

double inertia_output(const InertiaConfig& cfg, double df, double lag_state,
                      double washout_state) {
    const double cmd = (-cfg.k_inertia * lag_state - washout_state) / cfg.t_washout;
    return cfg.recovery_clamp ? recovery_clamp(cmd, df) : cmd;
}

double droop_step(const DroopConfig& cfg, double df, double dt, DroopState& state) {
    FirstOrderLag lag(cfg.t_lag, state.lag);
    state.lag = lag.step(cfg.deadband.apply(df), dt);
    return droop_output(cfg, state.lag);
}

double inertia_step(const InertiaConfig& cfg, double df, double dt, InertiaState& state) {
    FirstOrderLag lag(cfg.t_lag, state.lag);
    Washout washout(cfg.t_washout, state.washout);
    state.lag = lag.step(cfg.deadband.apply(df), dt);
    double cmd = washout.step(-cfg.k_inertia * state.lag, dt);
    state.washout = washout.state();
    return cfg.recovery_clamp ? recovery_clamp(cmd, df) : cmd;
}

CombinedOutput combined_step(const DroopConfig& droop_cfg, const InertiaConfig& inertia_cfg,
                             double df, double dt, CombinedState& state) {
    CombinedOutput out;
    out.droop = droop_step(droop_cfg, df, dt, state.droop);
    out.inertia = inertia_step(inertia_cfg, df, dt, state.inertia);
    out.total = out.droop + out.inertia;
    return out;
}

double plant_apply(const PVPlantConfig& cfg, double cmd, double dt, PlantState& state) {
    const LimitSpec limits = cfg.limits();
    state.limited_cmd = limits.apply(cmd, state.limited_cmd, dt);
    FirstOrderLag inverter(cfg.t_inv, state.output);
    state.output = limits.clamp(inverter.step(state.limited_cmd, dt));
    return cfg.c_pv * state.output;
}

} // namespace pvfreq
