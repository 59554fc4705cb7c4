#include "pvfreq/compliance.hpp"

#include "pvfreq/error.hpp"

#include <cmath>
#include <cstdio>

namespace pvfreq {

void ComplianceThresholds::validate() const {
    const std::pair<double, const char*> positive[] = {
        {step_magnitude, "compliance.step_magnitude"}, {max_reaction, "compliance.max_reaction"},
        {max_rise, "compliance.max_rise"},             {max_settling, "compliance.max_settling"},
        {max_overshoot, "compliance.max_overshoot"},   {settling_band, "compliance.settling_band"},
        {t_end, "compliance.t_end"},
    };
    for (const auto& [v, name] : positive) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ValidationError(std::string(name) + " must be > 0");
        }
    }
    if (!(step_time >= 0.0 && step_time < t_end)) {
        throw ValidationError("compliance.step_time must be in [0, t_end)");
    }
}

SampledResponse run_step_test(const ControllerSpec& controller, const PVPlantConfig& plant,
                              const ComplianceThresholds& thresholds, const SimConfig& sim) {
    if (controller.kind == ControllerKind::none) {
        throw ValidationError("compliance test needs a droop, inertia or combined controller");
    }
    controller.validate();
    plant.validate();
    thresholds.validate();

    SimConfig horizon = sim;
    horizon.t_end = thresholds.t_end;
    horizon.validate(thresholds.step_time);
    const double dt = horizon.dt;
    const long long steps = horizon.steps();
    const long long stride = horizon.sample_stride();

    CombinedState ctrl;
    PlantState out;
    SampledResponse r;
    r.t.push_back(0.0);
    r.y.push_back(0.0);
    for (long long i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double df = t >= thresholds.step_time - 1e-12 ? -thresholds.step_magnitude : 0.0;
        double cmd = 0.0;
        if (has_droop(controller.kind)) {
            cmd += droop_step(controller.droop, df, dt, ctrl.droop);
        }
        if (has_inertia(controller.kind)) {
            cmd += inertia_step(controller.inertia, df, dt, ctrl.inertia);
        }
        plant_apply(plant, cmd, dt, out);
        if ((i + 1) % stride == 0) {
            r.t.push_back(static_cast<double>(i + 1) * dt);
            r.y.push_back(out.output);
        }
    }
    return r;
}

ComplianceReport evaluate_compliance(const SampledResponse& response,
                                     const ComplianceThresholds& thresholds) {
    ComplianceReport rep;
    rep.thresholds = thresholds;
    StepMetricOptions opts;
    opts.settling_band = thresholds.settling_band;
    try {
        rep.metrics = compute_step_response_metrics(response, thresholds.step_time, opts);
    } catch (const NoResponseError& e) {
        rep.reason = std::string("NoResponse: ") + e.what();
        return rep;
    } catch (const NotSettledError& e) {
        rep.reason = std::string("NotSettled: ") + e.what();
        return rep;
    }
    const auto& m = *rep.metrics;
    rep.criteria = {
        {"reaction_time", m.reaction_time, thresholds.max_reaction,
         m.reaction_time <= thresholds.max_reaction},
        {"rise_time", m.rise_time, thresholds.max_rise, m.rise_time <= thresholds.max_rise},
        {"settling_time", m.settling_time, thresholds.max_settling,
         m.settling_time <= thresholds.max_settling},
        {"overshoot", m.overshoot, thresholds.max_overshoot,
         m.overshoot <= thresholds.max_overshoot},
    };
    rep.pass = true;
    for (const auto& c : rep.criteria) {
        rep.pass = rep.pass && c.pass;
    }
    return rep;
}

std::string format_report(const ComplianceReport& report) {
    std::string out;
    char line[128];
    std::snprintf(line, sizeof line, "%-14s %12s %12s  %s\n", "criterion", "value", "limit",
                  "result");
    out += line;
    for (const auto& c : report.criteria) {
        std::snprintf(line, sizeof line, "%-14s %12.4f %12.4f  %s\n", c.name.c_str(), c.value,
                      c.limit, c.pass ? "PASS" : "FAIL");
        out += line;
    }
    if (!report.reason.empty()) {
        out += "reason: " + report.reason + "\n";
    }
    out += std::string("overall: ") + (report.pass ? "PASS" : "FAIL") + "\n";
    return out;
}

} // namespace pvfreq
