#pragma once

#include "pvfreq/scenario.hpp"

#include <span>
#include <vector>

namespace pvfreq {

struct TraceSample {
    double t = 0.0;             // s
    double f = 0.0;             // Hz
    double rocof = 0.0;         // Hz/s, windowed end-difference
    double dp_gov = 0.0;        // system pu
    double dp_pv = 0.0;         // system pu, limited and lagged plant output
    double dp_pv_droop = 0.0;   // system pu, raw droop-path command
    double dp_pv_inertia = 0.0; // system pu, raw inertia-path command
};

struct Trace {
    std::vector<TraceSample> samples;
};

/// Continuous states of one run plus the slew limiter's held command.
struct EngineState {
    double df = 0.0;          // pu on f0
    double dp_mech = 0.0;     // governor output, system pu
    double droop_lag = 0.0;   // deadbanded df after the droop lag
    double inertia_lag = 0.0; // deadbanded df after the inertia lag
    double washout = 0.0;     // washout state, plant pu
    double plant = 0.0;       // inverter output change, plant pu
    double limited_cmd = 0.0; // limiter output at the last full step, plant pu
};

struct StepInputs {
    const SystemParams& system;
    const ControllerSpec& controller;
    double dp_event = 0.0;
    /// Sign of the scenario contingency; selects the governor clamp range.
    int event_direction = 0;
};

/// Path commands and plant output evaluated at a state (plant pu).
struct ControllerSignals {
    double droop = 0.0;
    double inertia = 0.0;
    double limited = 0.0;
};

ControllerSignals controller_signals(const EngineState& s, const StepInputs& in, double dt);

/// One RK4 step of all continuous states. Governor and plant clamps plus
/// the slew limiter are applied once, after the step.
EngineState simulate_step(const EngineState& state, const StepInputs& inputs, double dt);

/// Windowed end-difference (f_k - f_{k-w}) / (t_k - t_{k-w}). Samples with
/// k < w use sample 0 as the window start; sample 0 reports 0.
void fill_rocof(std::vector<TraceSample>& samples, long long window);

Trace run_simulation(const Scenario& scenario);
Trace run_simulation(const Scenario& scenario, ControllerKind controller, const SimConfig& sim);

/// Runs independent scenarios concurrently; results keep input order.
std::vector<Trace> run_batch(std::span<const Scenario> scenarios);

} // namespace pvfreq
