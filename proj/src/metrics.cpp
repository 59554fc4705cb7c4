#include "pvfreq/metrics.hpp"

#include "pvfreq/error.hpp"

#include <algorithm>
#include <cmath>

namespace pvfreq {

FrequencyMetrics compute_frequency_metrics(const Trace& trace, double t_event,
                                           const FrequencyMetricOptions& opts) {
    const auto& s = trace.samples;
    auto first = std::find_if(s.begin(), s.end(), [&](const auto& x) { return x.t > t_event; });
    if (first == s.end()) {
        throw RuntimeError("trace has no samples after the event");
    }
    const double t_last = s.back().t;
    if (t_last - t_event < opts.settling_window) {
        throw RuntimeError("trace shorter than the settling window");
    }

    auto lowest = std::min_element(first, s.end(),
                                   [](const auto& a, const auto& b) { return a.f < b.f; });
    auto highest = std::max_element(first, s.end(),
                                    [](const auto& a, const auto& b) { return a.f < b.f; });
    const double f_ref = s.front().f;
    EventDirection dir = opts.direction.value_or(
        (highest->f - f_ref) > (f_ref - lowest->f) ? EventDirection::over : EventDirection::under);
    auto extreme = dir == EventDirection::under ? lowest : highest;

    FrequencyMetrics m;
    m.nadir = extreme->f;
    m.nadir_time = extreme->t - t_event;
    for (auto it = first; it != s.end(); ++it) {
        m.max_abs_rocof = std::max(m.max_abs_rocof, std::abs(it->rocof));
    }
    double sum = 0.0;
    std::size_t n = 0;
    for (auto it = first; it != s.end(); ++it) {
        if (it->t >= t_last - opts.settling_window - 1e-9) {
            sum += it->f;
            ++n;
        }
    }
    m.settling_frequency = sum / static_cast<double>(n);
    return m;
}

double max_abs_rocof_between(const Trace& trace, double t_from, double t_to) {
    double out = 0.0;
    for (const auto& x : trace.samples) {
        if (x.t > t_from && x.t <= t_to + 1e-9) {
            out = std::max(out, std::abs(x.rocof));
        }
    }
    return out;
}

namespace {

double interpolate_time(double t0, double t1, double v0, double v1, double level) {
    if (v1 == v0) {
        return t1;
    }
    return t0 + (level - v0) / (v1 - v0) * (t1 - t0);
}

// First upward crossing of `level` by the normalized response at or after `from`.
double first_crossing(const std::vector<double>& t, const std::vector<double>& n,
                      std::size_t from, double level) {
    for (std::size_t i = from + 1; i < n.size(); ++i) {
        if (n[i] >= level) {
            return interpolate_time(t[i - 1], t[i], n[i - 1], n[i], level);
        }
    }
    throw NoResponseError("response never reaches the threshold");
}

} // namespace

StepResponseMetrics compute_step_response_metrics(const SampledResponse& response,
                                                  double step_time,
                                                  const StepMetricOptions& opts) {
    const auto& t = response.t;
    const auto& y = response.y;
    if (t.size() != y.size() || t.size() < 3) {
        throw ValidationError("step response needs at least 3 samples of equal-length t and y");
    }

    std::size_t base = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] <= step_time + 1e-12) {
            base = i;
        }
    }
    const double baseline = y[base];

    const double tail_start = t.back() - opts.final_fraction * (t.back() - t.front());
    double sum = 0.0;
    double lo = y.back();
    double hi = y.back();
    std::size_t count = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= tail_start - 1e-12) {
            sum += y[i];
            lo = std::min(lo, y[i]);
            hi = std::max(hi, y[i]);
            ++count;
        }
    }
    const double final_value = sum / static_cast<double>(count);
    const double change = final_value - baseline;
    if (std::abs(change) < opts.min_change) {
        throw NoResponseError("no response: final change below " + std::to_string(opts.min_change));
    }
    if (hi - lo >= opts.settle_tolerance * std::abs(change)) {
        throw NotSettledError("response not settled over the final part of the horizon");
    }

    std::vector<double> n(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        n[i] = (y[i] - baseline) / change;
    }

    StepResponseMetrics m;
    m.final_value = final_value;
    m.reaction_time = first_crossing(t, n, base, opts.reaction_fraction) - step_time;
    m.rise_time = first_crossing(t, n, base, opts.rise_high) -
                  first_crossing(t, n, base, opts.rise_low);

    const double band = opts.settling_band;
    std::size_t last_out = base;
    bool found = false;
    for (std::size_t i = y.size(); i-- > base;) {
        if (std::abs(n[i] - 1.0) > band) {
            last_out = i;
            found = true;
            break;
        }
    }
    if (!found || last_out + 1 >= n.size()) {
        m.settling_time = found ? t.back() - step_time : 0.0;
    } else {
        const double level = n[last_out] > 1.0 ? 1.0 + band : 1.0 - band;
        m.settling_time = interpolate_time(t[last_out], t[last_out + 1], n[last_out],
                                           n[last_out + 1], level) -
                          step_time;
    }

    double peak = 0.0;
    for (std::size_t i = base; i < n.size(); ++i) {
        peak = std::max(peak, n[i]);
    }
    // Excursions within the tail spread are indistinguishable from settling.
    const double tail_spread = (hi - lo) / std::abs(change);
    m.overshoot = peak - 1.0 > tail_spread ? peak - 1.0 : 0.0;
    return m;
}

std::vector<MetricsRow> compare_controllers(const Scenario& scenario, const SimConfig& sim) {
    std::vector<Scenario> runs;
    for (auto kind : kAllControllers) {
        Scenario s = scenario;
        s.controller.kind = kind;
        s.sim = sim;
        runs.push_back(std::move(s));
    }
    const std::vector<Trace> traces = run_batch(runs);
    std::vector<MetricsRow> rows;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        rows.push_back({scenario.name, runs[i].controller.kind,
                        compute_frequency_metrics(traces[i], scenario.contingency.t_event)});
    }
    return rows;
}

} // namespace pvfreq
