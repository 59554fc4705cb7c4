#include "pvfreq/scenario_io.hpp"

#include "pvfreq/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>

namespace pvfreq {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) {
        throw ValidationError((where.empty() ? "document" : where) + " must be an object");
    }
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ValidationError("unknown key '" + (where.empty() ? key : where + "." + key) +
                                  "'");
        }
    }
}

std::string join(const std::string& where, std::string_view key) {
    return where.empty() ? std::string(key) : where + "." + std::string(key);
}

void read_number(const json& obj, const std::string& where, std::string_view key, double& dst) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        return;
    }
    if (!it->is_number()) {
        throw ValidationError(join(where, key) + " must be a number");
    }
    dst = it->get<double>();
}

void read_bool(const json& obj, const std::string& where, std::string_view key, bool& dst) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        return;
    }
    if (!it->is_boolean()) {
        throw ValidationError(join(where, key) + " must be true or false");
    }
    dst = it->get<bool>();
}

const json* child(const json& obj, std::string_view key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

void read_system(const json& j, SystemParams& sys) {
    check_keys(j, "system", {"f0", "h_sys", "d_load", "governor", "pv"});
    read_number(j, "system", "f0", sys.f0);
    read_number(j, "system", "h_sys", sys.h_sys);
    read_number(j, "system", "d_load", sys.d_load);
    if (const json* g = child(j, "governor")) {
        check_keys(*g, "system.governor", {"kappa", "r_gov", "t_gov", "reserve_limit"});
        read_number(*g, "system.governor", "kappa", sys.governor.kappa);
        read_number(*g, "system.governor", "r_gov", sys.governor.r_gov);
        read_number(*g, "system.governor", "t_gov", sys.governor.t_gov);
        read_number(*g, "system.governor", "reserve_limit", sys.governor.reserve_limit);
    }
    if (const json* p = child(j, "pv")) {
        check_keys(*p, "system.pv", {"c_pv", "headroom", "available_power", "t_inv", "rate_limit"});
        read_number(*p, "system.pv", "c_pv", sys.pv.c_pv);
        read_number(*p, "system.pv", "headroom", sys.pv.headroom);
        read_number(*p, "system.pv", "available_power", sys.pv.available_power);
        read_number(*p, "system.pv", "t_inv", sys.pv.t_inv);
        if (const json* r = child(*p, "rate_limit")) {
            if (r->is_null()) {
                sys.pv.rate_limit.reset();
            } else if (r->is_number()) {
                sys.pv.rate_limit = r->get<double>();
            } else {
                throw ValidationError("system.pv.rate_limit must be a number or null");
            }
        }
    }
}

void read_controller(const json& j, ControllerSpec& c) {
    check_keys(j, "controller", {"kind", "droop", "inertia"});
    if (const json* k = child(j, "kind")) {
        if (!k->is_string()) {
            throw ValidationError("controller.kind must be a string");
        }
        c.kind = parse_controller_kind(k->get<std::string>());
    }
    if (const json* d = child(j, "droop")) {
        check_keys(*d, "controller.droop", {"r", "deadband", "t_lag"});
        read_number(*d, "controller.droop", "r", c.droop.r_droop);
        read_number(*d, "controller.droop", "deadband", c.droop.deadband.width);
        read_number(*d, "controller.droop", "t_lag", c.droop.t_lag);
    }
    if (const json* i = child(j, "inertia")) {
        check_keys(*i, "controller.inertia",
                   {"k", "deadband", "t_lag", "t_washout", "recovery_clamp"});
        read_number(*i, "controller.inertia", "k", c.inertia.k_inertia);
        read_number(*i, "controller.inertia", "deadband", c.inertia.deadband.width);
        read_number(*i, "controller.inertia", "t_lag", c.inertia.t_lag);
        read_number(*i, "controller.inertia", "t_washout", c.inertia.t_washout);
        read_bool(*i, "controller.inertia", "recovery_clamp", c.inertia.recovery_clamp);
    }
}

void read_compliance(const json& j, ComplianceThresholds& t) {
    check_keys(j, "compliance",
               {"step_magnitude", "max_reaction", "max_rise", "max_settling", "max_overshoot",
                "settling_band", "step_time", "t_end"});
    read_number(j, "compliance", "step_magnitude", t.step_magnitude);
    read_number(j, "compliance", "max_reaction", t.max_reaction);
    read_number(j, "compliance", "max_rise", t.max_rise);
    read_number(j, "compliance", "max_settling", t.max_settling);
    read_number(j, "compliance", "max_overshoot", t.max_overshoot);
    read_number(j, "compliance", "settling_band", t.settling_band);
    read_number(j, "compliance", "step_time", t.step_time);
    read_number(j, "compliance", "t_end", t.t_end);
}

json compliance_json(const ComplianceThresholds& t) {
    return {{"step_magnitude", t.step_magnitude}, {"max_reaction", t.max_reaction},
            {"max_rise", t.max_rise},             {"max_settling", t.max_settling},
            {"max_overshoot", t.max_overshoot},   {"settling_band", t.settling_band},
            {"step_time", t.step_time},           {"t_end", t.t_end}};
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

double parse_cell(const std::string& s) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) {
            throw ValidationError("bad numeric cell '" + s + "'");
        }
        return v;
    } catch (const std::logic_error&) {
        throw ValidationError("bad numeric cell '" + s + "'");
    }
}

void check_stream(const std::ostream& out) {
    if (!out) {
        throw RuntimeError("failed to write output");
    }
}

void expect_header(std::istream& in, std::string_view header) {
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw ValidationError("unexpected CSV header (want '" + std::string(header) + "')");
    }
}

} // namespace

ScenarioDocument parse_document(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw SyntaxError(std::string("syntax error at byte ") + std::to_string(e.byte) + ": " +
                              e.what(),
                          e.byte);
    }
    check_keys(doc, "",
               {"name", "preset", "system", "controller", "contingency", "sim", "compliance"});

    std::string preset = "ei80";
    if (const json* p = child(doc, "preset")) {
        if (!p->is_string()) {
            throw ValidationError("preset must be a string");
        }
        preset = p->get<std::string>();
    }
    ScenarioDocument out;
    out.scenario = make_scenario(preset);
    Scenario& s = out.scenario;
    if (const json* n = child(doc, "name")) {
        if (!n->is_string()) {
            throw ValidationError("name must be a string");
        }
        s.name = n->get<std::string>();
    }
    if (const json* j = child(doc, "system")) {
        read_system(*j, s.system);
    }
    if (const json* j = child(doc, "controller")) {
        read_controller(*j, s.controller);
    }
    if (const json* j = child(doc, "contingency")) {
        check_keys(*j, "contingency", {"dp", "t_event"});
        read_number(*j, "contingency", "dp", s.contingency.dp);
        read_number(*j, "contingency", "t_event", s.contingency.t_event);
    }
    if (const json* j = child(doc, "sim")) {
        check_keys(*j, "sim", {"dt", "t_end", "sample_interval", "rocof_window"});
        read_number(*j, "sim", "dt", s.sim.dt);
        read_number(*j, "sim", "t_end", s.sim.t_end);
        read_number(*j, "sim", "sample_interval", s.sim.sample_interval);
        read_number(*j, "sim", "rocof_window", s.sim.rocof_window);
    }
    if (const json* j = child(doc, "compliance")) {
        read_compliance(*j, out.compliance);
    }
    s.validate();
    out.compliance.validate();
    return out;
}

Scenario parse_scenario(std::string_view text) { return parse_document(text).scenario; }

std::string serialize_scenario(const Scenario& s, const ComplianceThresholds* compliance) {
    const auto& sys = s.system;
    const auto& c = s.controller;
    json pv = {{"c_pv", sys.pv.c_pv},
               {"headroom", sys.pv.headroom},
               {"available_power", sys.pv.available_power},
               {"t_inv", sys.pv.t_inv},
               {"rate_limit", sys.pv.rate_limit ? json(*sys.pv.rate_limit) : json(nullptr)}};
    json doc = {
        {"name", s.name},
        {"system",
         {{"f0", sys.f0},
          {"h_sys", sys.h_sys},
          {"d_load", sys.d_load},
          {"governor",
           {{"kappa", sys.governor.kappa},
            {"r_gov", sys.governor.r_gov},
            {"t_gov", sys.governor.t_gov},
            {"reserve_limit", sys.governor.reserve_limit}}},
          {"pv", pv}}},
        {"controller",
         {{"kind", std::string(to_string(c.kind))},
          {"droop",
           {{"r", c.droop.r_droop}, {"deadband", c.droop.deadband.width}, {"t_lag", c.droop.t_lag}}},
          {"inertia",
           {{"k", c.inertia.k_inertia},
            {"deadband", c.inertia.deadband.width},
            {"t_lag", c.inertia.t_lag},
            {"t_washout", c.inertia.t_washout},
            {"recovery_clamp", c.inertia.recovery_clamp}}}}},
        {"contingency", {{"dp", s.contingency.dp}, {"t_event", s.contingency.t_event}}},
        {"sim",
         {{"dt", s.sim.dt},
          {"t_end", s.sim.t_end},
          {"sample_interval", s.sim.sample_interval},
          {"rocof_window", s.sim.rocof_window}}},
    };
    if (compliance) {
        doc["compliance"] = compliance_json(*compliance);
    }
    return doc.dump(2) + "\n";
}

void apply_overrides(Scenario& scenario, std::span<const std::string> assignments) {
    for (const auto& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ValidationError("override '" + a + "' must have the form path=value");
        }
        const std::string path = a.substr(0, eq);
        const std::string value = a.substr(eq + 1);
        if (path == "controller.kind") {
            scenario.controller.kind = parse_controller_kind(value);
        } else if (path == "controller.inertia.recovery_clamp") {
            if (value != "true" && value != "false") {
                throw ValidationError("controller.inertia.recovery_clamp must be true or false");
            }
            scenario.controller.inertia.recovery_clamp = value == "true";
        } else if (path == "name") {
            scenario.name = value;
        } else if (path.rfind("sim.", 0) == 0) {
            double v = parse_cell(value);
            if (path == "sim.dt") scenario.sim.dt = v;
            else if (path == "sim.t_end") scenario.sim.t_end = v;
            else if (path == "sim.sample_interval") scenario.sim.sample_interval = v;
            else if (path == "sim.rocof_window") scenario.sim.rocof_window = v;
            else throw ValidationError("unknown parameter path '" + path + "'");
        } else {
            set_scenario_field(scenario, path, parse_cell(value));
        }
    }
    scenario.validate();
}

std::string format_fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s(buf);
    if (s == "-0.000000") {
        s.erase(0, 1);
    }
    return s;
}

void write_trace_csv(const Trace& trace, std::ostream& out) {
    out << kTraceHeader << '\n';
    for (const auto& x : trace.samples) {
        out << format_fixed6(x.t) << ',' << format_fixed6(x.f) << ',' << format_fixed6(x.rocof)
            << ',' << format_fixed6(x.dp_gov) << ',' << format_fixed6(x.dp_pv) << ','
            << format_fixed6(x.dp_pv_droop) << ',' << format_fixed6(x.dp_pv_inertia) << '\n';
    }
    check_stream(out);
}

Trace read_trace_csv(std::istream& in) {
    expect_header(in, kTraceHeader);
    Trace trace;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto cells = split_csv_line(line);
        if (cells.size() != 7) {
            throw ValidationError("trace row needs 7 columns: '" + line + "'");
        }
        trace.samples.push_back({parse_cell(cells[0]), parse_cell(cells[1]), parse_cell(cells[2]),
                                 parse_cell(cells[3]), parse_cell(cells[4]), parse_cell(cells[5]),
                                 parse_cell(cells[6])});
    }
    return trace;
}

void write_metrics_csv(std::span<const MetricsRow> rows, std::ostream& out) {
    out << kMetricsHeader << '\n';
    for (const auto& r : rows) {
        out << r.scenario << ',' << to_string(r.controller) << ',' << format_fixed6(r.metrics.nadir)
            << ',' << format_fixed6(r.metrics.nadir_time) << ','
            << format_fixed6(r.metrics.max_abs_rocof) << ','
            << format_fixed6(r.metrics.settling_frequency) << '\n';
    }
    check_stream(out);
}

std::vector<MetricsRow> read_metrics_csv(std::istream& in) {
    expect_header(in, kMetricsHeader);
    std::vector<MetricsRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto cells = split_csv_line(line);
        if (cells.size() != 6) {
            throw ValidationError("metrics row needs 6 columns: '" + line + "'");
        }
        rows.push_back({cells[0], parse_controller_kind(cells[1]),
                        {parse_cell(cells[2]), parse_cell(cells[3]), parse_cell(cells[4]),
                         parse_cell(cells[5])}});
    }
    return rows;
}

void write_sweep_csv(std::string_view param_path, std::span<const SweepRow> rows,
                     std::ostream& out) {
    out << kSweepHeader << '\n';
    for (const auto& r : rows) {
        out << param_path << ',' << format_fixed6(r.value) << ',' << format_fixed6(r.metrics.nadir)
            << ',' << format_fixed6(r.metrics.nadir_time) << ','
            << format_fixed6(r.metrics.max_abs_rocof) << ','
            << format_fixed6(r.metrics.settling_frequency) << '\n';
    }
    check_stream(out);
}

std::string report_to_json(const ComplianceReport& report) {
    json j;
    j["pass"] = report.pass;
    j["thresholds"] = compliance_json(report.thresholds);
    if (report.metrics) {
        const auto& m = *report.metrics;
        j["metrics"] = {{"reaction_time", m.reaction_time},
                        {"rise_time", m.rise_time},
                        {"settling_time", m.settling_time},
                        {"overshoot", m.overshoot},
                        {"final_value", m.final_value}};
    } else {
        j["metrics"] = nullptr;
    }
    j["criteria"] = json::array();
    for (const auto& c : report.criteria) {
        j["criteria"].push_back(
            {{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass}});
    }
    if (!report.reason.empty()) {
        j["reason"] = report.reason;
    }
    return j.dump(2) + "\n";
}

std::string headroom_to_json(const HeadroomQuery& query, const HeadroomResult& result) {
    json j = {{"scenario", query.scenario.name},
              {"controller", std::string(to_string(query.controller))},
              {"target_nadir_hz", query.target_nadir},
              {"h_max", query.h_max},
              {"tolerance", query.tolerance},
              {"headroom", result.headroom},
              {"nadir_hz", result.nadir},
              {"runs", result.runs}};
    return j.dump(2) + "\n";
}

} // namespace pvfreq
