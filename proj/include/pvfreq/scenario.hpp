#pragma once

#include "pvfreq/grid_dynamics.hpp"
#include "pvfreq/pv_controller.hpp"

#include <span>
#include <string>
#include <string_view>

namespace pvfreq {

struct SimConfig {
    double dt = 0.005;
    double t_end = 60.0;
    double sample_interval = 0.01;
    double rocof_window = 0.1;

    void validate(double t_event) const;

    long long steps() const;
    long long sample_stride() const;
    long long rocof_samples() const;
};

/// The unit of a run: grid equivalent, PV controller, disturbance, horizon.
struct Scenario {
    std::string name;
    SystemParams system;
    ControllerSpec controller;
    Contingency contingency;
    SimConfig sim;

    /// Throws ValidationError naming the first offending field.
    void validate() const;
};

/// Preset grid with default controller settings and horizon.
Scenario make_scenario(std::string_view preset, ControllerKind kind = ControllerKind::none);

/// Numeric scenario fields addressable by dotted path, e.g. "system.h_sys".
std::span<const std::string_view> scenario_field_paths();
double get_scenario_field(const Scenario& s, std::string_view path);
void set_scenario_field(Scenario& s, std::string_view path, double value);

} // namespace pvfreq
