#include "pvfreq/headroom.hpp"

#include "pvfreq/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace pvfreq {

namespace {

// Plant headroom must stay below 1.
double feasible_headroom(double h) { return std::min(h, std::nextafter(1.0, 0.0)); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

void HeadroomQuery::validate() const {
    if (!(tolerance > 0.0 && tolerance < h_max && h_max <= 1.0)) {
        throw ValidationError("headroom query requires 0 < tolerance < h_max <= 1");
    }
    if (!(target_nadir < scenario.system.f0)) {
        throw ValidationError("target_nadir must be below the nominal frequency");
    }
    scenario.validate();
}

double nadir_at_headroom(const Scenario& scenario, ControllerKind controller, double headroom,
                         const SimConfig& sim) {
    Scenario s = scenario;
    s.system.pv.headroom = feasible_headroom(headroom);
    const Trace trace = run_simulation(s, controller, sim);
    FrequencyMetricOptions opts;
    opts.direction = EventDirection::under;
    return compute_frequency_metrics(trace, s.contingency.t_event, opts).nadir;
}

HeadroomResult min_headroom_for_nadir(const HeadroomQuery& query, const SimConfig& sim) {
    query.validate();
    HeadroomResult res;
    auto nadir = [&](double h) {
        ++res.runs;
        return nadir_at_headroom(query.scenario, query.controller, h, sim);
    };

    const double n_lo = nadir(0.0);
    const double n_mid = nadir(0.5 * query.h_max);
    const double n_hi = nadir(query.h_max);
    if (!(n_lo <= n_mid && n_mid <= n_hi)) {
        throw NonMonotoneError("nadir is not non-decreasing in headroom over {0, h_max/2, h_max}: " +
                               fmt(n_lo) + ", " + fmt(n_mid) + ", " + fmt(n_hi) + " Hz");
    }
    if (n_lo >= query.target_nadir) {
        res.headroom = 0.0;
        res.nadir = n_lo;
        return res;
    }
    if (n_hi < query.target_nadir) {
        throw UnattainableError("target nadir " + fmt(query.target_nadir) +
                                " Hz not reached at h_max = " + fmt(query.h_max) +
                                " (nadir " + fmt(n_hi) + " Hz)");
    }

    double lo = 0.0;
    double hi = query.h_max;
    double n_at_hi = n_hi;
    if (n_mid >= query.target_nadir) {
        hi = 0.5 * query.h_max;
        n_at_hi = n_mid;
    } else {
        lo = 0.5 * query.h_max;
    }
    while (hi - lo > query.tolerance) {
        const double mid = 0.5 * (lo + hi);
        const double n = nadir(mid);
        if (n >= query.target_nadir) {
            hi = mid;
            n_at_hi = n;
        } else {
            lo = mid;
        }
    }
    res.headroom = hi;
    res.nadir = n_at_hi;
    return res;
}

std::vector<SweepRow> sweep_param(const Scenario& scenario, ControllerKind controller,
                                  std::string_view param_path, std::span<const double> values,
                                  const SimConfig& sim) {
    // Resolve the path up front so an unknown name fails even for an empty sweep.
    Scenario probe = scenario;
    set_scenario_field(probe, param_path, get_scenario_field(scenario, param_path));

    std::vector<Scenario> runs;
    runs.reserve(values.size());
    for (double v : values) {
        Scenario s = scenario;
        set_scenario_field(s, param_path, v);
        s.controller.kind = controller;
        s.sim = sim;
        s.validate();
        runs.push_back(std::move(s));
    }
    const std::vector<Trace> traces = run_batch(runs);
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (std::size_t i = 0; i < runs.size(); ++i) {
        rows.push_back({values[i],
                        compute_frequency_metrics(traces[i], runs[i].contingency.t_event)});
    }
    return rows;
}

} // namespace pvfreq
