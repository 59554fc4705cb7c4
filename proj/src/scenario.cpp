#include "pvfreq/scenario.hpp"

#include "pvfreq/error.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace pvfreq {

namespace {

long long checked_ratio(double num, double den, const char* what) {
    const double q = num / den;
    const long long n = std::llround(q);
    if (n < 1 || std::abs(q - static_cast<double>(n)) > 1e-6) {
        throw ValidationError(std::string(what));
    }
    return n;
}

struct FieldRef {
    std::string_view path;
    double (*get)(const Scenario&);
    void (*set)(Scenario&, double);
};

#define PVFREQ_FIELD(PATH, MEMBER)                                                                 \
    FieldRef {                                                                                     \
        PATH, [](const Scenario& s) { return s.MEMBER; }, [](Scenario& s, double v) { s.MEMBER = v; } \
    }

const std::array<FieldRef, 21> kFields{{
    PVFREQ_FIELD("system.f0", system.f0),
    PVFREQ_FIELD("system.h_sys", system.h_sys),
    PVFREQ_FIELD("system.d_load", system.d_load),
    PVFREQ_FIELD("system.governor.kappa", system.governor.kappa),
    PVFREQ_FIELD("system.governor.r_gov", system.governor.r_gov),
    PVFREQ_FIELD("system.governor.t_gov", system.governor.t_gov),
    PVFREQ_FIELD("system.governor.reserve_limit", system.governor.reserve_limit),
    PVFREQ_FIELD("system.pv.c_pv", system.pv.c_pv),
    PVFREQ_FIELD("system.pv.headroom", system.pv.headroom),
    PVFREQ_FIELD("system.pv.available_power", system.pv.available_power),
    PVFREQ_FIELD("system.pv.t_inv", system.pv.t_inv),
    // Absent rate limit reads as 0; writing a value <= 0 clears it.
    FieldRef{"system.pv.rate_limit",
             [](const Scenario& s) { return s.system.pv.rate_limit.value_or(0.0); },
             [](Scenario& s, double v) {
                 if (v > 0.0) {
                     s.system.pv.rate_limit = v;
                 } else {
                     s.system.pv.rate_limit.reset();
                 }
             }},
    PVFREQ_FIELD("controller.droop.r", controller.droop.r_droop),
    PVFREQ_FIELD("controller.droop.deadband", controller.droop.deadband.width),
    PVFREQ_FIELD("controller.droop.t_lag", controller.droop.t_lag),
    PVFREQ_FIELD("controller.inertia.k", controller.inertia.k_inertia),
    PVFREQ_FIELD("controller.inertia.deadband", controller.inertia.deadband.width),
    PVFREQ_FIELD("controller.inertia.t_lag", controller.inertia.t_lag),
    PVFREQ_FIELD("controller.inertia.t_washout", controller.inertia.t_washout),
    PVFREQ_FIELD("contingency.dp", contingency.dp),
    PVFREQ_FIELD("contingency.t_event", contingency.t_event),
}};

#undef PVFREQ_FIELD

// sim.* paths are kept out of the sweep table: they change the sample grid.
const std::array<std::string_view, 21> kPaths = [] {
    std::array<std::string_view, 21> out{};
    for (std::size_t i = 0; i < kFields.size(); ++i) {
        out[i] = kFields[i].path;
    }
    return out;
}();

const FieldRef& find_field(std::string_view path) {
    for (const auto& f : kFields) {
        if (f.path == path) {
            return f;
        }
    }
    std::string valid;
    for (const auto& f : kFields) {
        valid += valid.empty() ? "" : ", ";
        valid += f.path;
    }
    throw ValidationError("unknown parameter path '" + std::string(path) +
                          "' (valid paths: " + valid + ")");
}

} // namespace

void SimConfig::validate(double t_event) const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("sim.dt must be > 0");
    }
    if (!(t_end > t_event) || !std::isfinite(t_end)) {
        throw ValidationError("sim.t_end must be > contingency.t_event");
    }
    if (!(sample_interval >= dt)) {
        throw ValidationError("sim.sample_interval must be >= sim.dt");
    }
    if (!(rocof_window >= sample_interval)) {
        throw ValidationError("sim.rocof_window must be >= sim.sample_interval");
    }
    steps();
    sample_stride();
    rocof_samples();
}

long long SimConfig::steps() const {
    return checked_ratio(t_end, dt, "sim.t_end must be an integer multiple of sim.dt");
}

long long SimConfig::sample_stride() const {
    return checked_ratio(sample_interval, dt,
                         "sim.sample_interval must be an integer multiple of sim.dt");
}

long long SimConfig::rocof_samples() const {
    return checked_ratio(rocof_window, sample_interval,
                         "sim.rocof_window must be an integer multiple of sim.sample_interval");
}

void Scenario::validate() const {
    system.validate();
    controller.validate();
    contingency.validate();
    sim.validate(contingency.t_event);
}

Scenario make_scenario(std::string_view preset, ControllerKind kind) {
    Preset p = preset_scenario(preset);
    Scenario s;
    s.name = p.name;
    s.system = p.system;
    s.contingency = p.contingency;
    s.controller.kind = kind;
    return s;
}

std::span<const std::string_view> scenario_field_paths() { return kPaths; }

double get_scenario_field(const Scenario& s, std::string_view path) {
    return find_field(path).get(s);
}

void set_scenario_field(Scenario& s, std::string_view path, double value) {
    find_field(path).set(s, value);
}

} // namespace pvfreq
