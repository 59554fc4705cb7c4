#include "pvfreq/sim_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <thread>

namespace pvfreq {

namespace {

constexpr std::size_t kStates = 6;
using StateVec = std::array<double, kStates>;

StateVec pack(const EngineState& s) {
    return {s.df, s.dp_mech, s.droop_lag, s.inertia_lag, s.washout, s.plant};
}

EngineState unpack(const StateVec& v, double limited_cmd) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], limited_cmd};
}

StateVec derivative(const EngineState& s, const StepInputs& in, double dt) {
    const ControllerKind kind = in.controller.kind;
    const ControllerSignals sig = controller_signals(s, in, dt);
    const double dp_pv = in.system.pv.c_pv * s.plant;

    StateVec d{};
    d[0] = swing_rhs(in.system, s.df, s.dp_mech, dp_pv, in.dp_event);
    d[1] = governor_rhs(in.system.governor, s.df, s.dp_mech);
    if (has_droop(kind)) {
        const auto& c = in.controller.droop;
        d[2] = (c.deadband.apply(s.df) - s.droop_lag) / c.t_lag;
    }
    if (has_inertia(kind)) {
        const auto& c = in.controller.inertia;
        d[3] = (c.deadband.apply(s.df) - s.inertia_lag) / c.t_lag;
        d[4] = (-c.k_inertia * s.inertia_lag - s.washout) / c.t_washout;
    }
    d[5] = (sig.limited - s.plant) / in.system.pv.t_inv;
    return d;
}

StateVec axpy(const StateVec& x, double a, const StateVec& y) {
    StateVec out;
    for (std::size_t i = 0; i < kStates; ++i) {
        out[i] = x[i] + a * y[i];
    }
    return out;
}

} // namespace

ControllerSignals controller_signals(const EngineState& s, const StepInputs& in, double dt) {
    const ControllerKind kind = in.controller.kind;
    ControllerSignals sig;
    if (has_droop(kind)) {
        sig.droop = droop_output(in.controller.droop, s.droop_lag);
    }
    if (has_inertia(kind)) {
        sig.inertia = inertia_output(in.controller.inertia, s.df, s.inertia_lag, s.washout);
    }
    if (kind != ControllerKind::none) {
        sig.limited = in.system.pv.limits().apply(sig.droop + sig.inertia, s.limited_cmd, dt);
    }
    return sig;
}

EngineState simulate_step(const EngineState& state, const StepInputs& inputs, double dt) {
    const StateVec x = pack(state);
    const double held = state.limited_cmd;

    const StateVec k1 = derivative(state, inputs, dt);
    const StateVec k2 = derivative(unpack(axpy(x, 0.5 * dt, k1), held), inputs, dt);
    const StateVec k3 = derivative(unpack(axpy(x, 0.5 * dt, k2), held), inputs, dt);
    const StateVec k4 = derivative(unpack(axpy(x, dt, k3), held), inputs, dt);

    StateVec next;
    for (std::size_t i = 0; i < kStates; ++i) {
        next[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    EngineState out = unpack(next, held);

    const double reserve = inputs.system.governor.reserve_limit;
    const double gov_lo = inputs.event_direction > 0 ? 0.0 : -reserve;
    const double gov_hi = inputs.event_direction < 0 ? 0.0 : reserve;
    out.dp_mech = std::clamp(out.dp_mech, gov_lo, gov_hi);

    const LimitSpec limits = inputs.system.pv.limits();
    out.plant = limits.clamp(out.plant);
    out.limited_cmd = controller_signals(out, inputs, dt).limited;
    return out;
}

void fill_rocof(std::vector<TraceSample>& samples, long long window) {
    const auto w = static_cast<std::size_t>(std::max(1LL, window));
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (k == 0) {
            samples[k].rocof = 0.0;
            continue;
        }
        const std::size_t j = k >= w ? k - w : 0;
        samples[k].rocof = (samples[k].f - samples[j].f) / (samples[k].t - samples[j].t);
    }
}

Trace run_simulation(const Scenario& scenario) {
    return run_simulation(scenario, scenario.controller.kind, scenario.sim);
}

Trace run_simulation(const Scenario& scenario, ControllerKind controller, const SimConfig& sim) {
    Scenario s = scenario;
    s.controller.kind = controller;
    s.sim = sim;
    s.validate();

    const double dt = sim.dt;
    const long long steps = sim.steps();
    const long long stride = sim.sample_stride();
    const long long event_step =
        static_cast<long long>(std::ceil(s.contingency.t_event / dt - 1e-9));
    const int direction = s.contingency.dp > 0.0 ? 1 : (s.contingency.dp < 0.0 ? -1 : 0);
    const double c_pv = s.system.pv.c_pv;
    const double f0 = s.system.f0;

    Trace trace;
    trace.samples.reserve(static_cast<std::size_t>(steps / stride + 1));

    EngineState state;
    auto record = [&](long long i, const StepInputs& in) {
        const ControllerSignals sig = controller_signals(state, in, dt);
        TraceSample smp;
        smp.t = static_cast<double>(i) * dt;
        smp.f = f0 * (1.0 + state.df);
        smp.dp_gov = state.dp_mech;
        smp.dp_pv = c_pv * state.plant;
        smp.dp_pv_droop = c_pv * sig.droop;
        smp.dp_pv_inertia = c_pv * sig.inertia;
        trace.samples.push_back(smp);
    };

    for (long long i = 0; i <= steps; ++i) {
        const StepInputs in{s.system, s.controller, i >= event_step ? s.contingency.dp : 0.0,
                            direction};
        if (i % stride == 0) {
            record(i, in);
        }
        if (i == steps) {
            break;
        }
        state = simulate_step(state, in, dt);
    }
    fill_rocof(trace.samples, sim.rocof_samples());
    return trace;
}

std::vector<Trace> run_batch(std::span<const Scenario> scenarios) {
    std::vector<Trace> out(scenarios.size());
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, scenarios.size() + 1);
    if (workers <= 1 || scenarios.size() <= 1) {
        for (std::size_t i = 0; i < scenarios.size(); ++i) {
            out[i] = run_simulation(scenarios[i]);
        }
        return out;
    }
    std::vector<std::future<void>> jobs;
    jobs.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < scenarios.size(); i += workers) {
                out[i] = run_simulation(scenarios[i]);
            }
        }));
    }
    for (auto& j : jobs) {
        j.get();
    }
    return out;
}

} // namespace pvfreq
