#include "pvfreq/cli.hpp"

#include "pvfreq/error.hpp"
#include "pvfreq/scenario_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace pvfreq {

namespace {

struct ScenarioArgs {
    std::string preset;
    std::string config;
    std::string controller;
    std::vector<std::string> overrides;
};

void add_scenario_args(CLI::App* cmd, ScenarioArgs& a, bool with_controller = true) {
    cmd->add_option("--preset", a.preset, "Preset grid (ei80, ercot80)");
    cmd->add_option("--config", a.config, "Scenario document (JSON)");
    if (with_controller) {
        cmd->add_option("--controller", a.controller, "none, droop, inertia or combined");
    }
    cmd->add_option("--set", a.overrides, "Field override path=value, repeatable");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ScenarioDocument load(const ScenarioArgs& a) {
    if (!a.preset.empty() && !a.config.empty()) {
        throw ValidationError("--preset and --config are mutually exclusive");
    }
    ScenarioDocument doc;
    if (!a.config.empty()) {
        doc = parse_document(read_file(a.config));
    } else {
        doc.scenario = make_scenario(a.preset.empty() ? "ei80" : a.preset);
    }
    if (!a.controller.empty()) {
        doc.scenario.controller.kind = parse_controller_kind(a.controller);
    }
    apply_overrides(doc.scenario, a.overrides);
    return doc;
}

// Writes to `path`, or to `fallback` when path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw RuntimeError("cannot open '" + path + "' for writing");
    }
    write(f);
    f.flush();
    if (!f) {
        throw RuntimeError("failed writing '" + path + "'");
    }
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(cell, &used));
            if (used != cell.size()) {
                throw std::invalid_argument(cell);
            }
        } catch (const std::logic_error&) {
            throw ValidationError("bad value '" + cell + "' in --values");
        }
    }
    return out;
}

} // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"PV frequency-control simulator for aggregated grid equivalents", "pvfreq"};
    app.require_subcommand(1);

    ScenarioArgs sim_args;
    std::string trace_out;
    std::string metrics_out;
    auto* simulate = app.add_subcommand("simulate", "Run one scenario, write trace and metrics CSV");
    add_scenario_args(simulate, sim_args);
    simulate->add_option("--out", trace_out, "Trace CSV path (default stdout)");
    simulate->add_option("--metrics", metrics_out, "Metrics CSV path");

    ScenarioArgs cmp_args;
    std::string cmp_out;
    auto* compare = app.add_subcommand("compare", "Metrics for none/droop/inertia/combined");
    add_scenario_args(compare, cmp_args, false);
    compare->add_option("--out", cmp_out, "Metrics CSV path (default stdout)");

    ScenarioArgs cpl_args;
    std::string cpl_out;
    auto* compliance = app.add_subcommand("compliance", "Open-loop frequency step test");
    add_scenario_args(compliance, cpl_args);
    compliance->add_option("--out", cpl_out, "JSON report path");

    ScenarioArgs hr_args;
    std::string hr_out;
    HeadroomQuery hq;
    auto* headroom = app.add_subcommand("headroom", "Minimum PV headroom for a nadir target");
    add_scenario_args(headroom, hr_args);
    headroom->add_option("--target", hq.target_nadir, "Nadir target in Hz")->capture_default_str();
    headroom->add_option("--h-max", hq.h_max, "Upper headroom bound")->capture_default_str();
    headroom->add_option("--tolerance", hq.tolerance, "Bisection tolerance")->capture_default_str();
    headroom->add_option("--out", hr_out, "JSON result path");

    ScenarioArgs sw_args;
    std::string sw_param;
    std::string sw_values;
    std::string sw_out;
    auto* sweep = app.add_subcommand("sweep", "Metrics over values of one scenario field");
    add_scenario_args(sweep, sw_args);
    sweep->add_option("--param", sw_param, "Dotted field path, e.g. system.h_sys")->required();
    sweep->add_option("--values", sw_values, "Comma-separated values")->required();
    sweep->add_option("--out", sw_out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitValidation;
    }

    try {
        if (*simulate) {
            const ScenarioDocument doc = load(sim_args);
            const Scenario& s = doc.scenario;
            const Trace trace = run_simulation(s);
            emit(trace_out, out, [&](std::ostream& o) { write_trace_csv(trace, o); });
            if (!metrics_out.empty()) {
                const MetricsRow row{s.name, s.controller.kind,
                                     compute_frequency_metrics(trace, s.contingency.t_event)};
                emit(metrics_out, out, [&](std::ostream& o) {
                    write_metrics_csv(std::span<const MetricsRow>(&row, 1), o);
                });
            }
        } else if (*compare) {
            const Scenario s = load(cmp_args).scenario;
            const auto rows = compare_controllers(s, s.sim);
            emit(cmp_out, out, [&](std::ostream& o) { write_metrics_csv(rows, o); });
        } else if (*compliance) {
            ScenarioDocument doc = load(cpl_args);
            if (doc.scenario.controller.kind == ControllerKind::none) {
                throw ValidationError("compliance needs --controller droop, inertia or combined");
            }
            const auto response = run_step_test(doc.scenario.controller, doc.scenario.system.pv,
                                                doc.compliance, doc.scenario.sim);
            const ComplianceReport report = evaluate_compliance(response, doc.compliance);
            out << format_report(report);
            if (!cpl_out.empty()) {
                emit(cpl_out, out, [&](std::ostream& o) { o << report_to_json(report); });
            }
            return report.pass ? kExitOk : kExitComplianceFail;
        } else if (*headroom) {
            ScenarioDocument doc = load(hr_args);
            hq.scenario = doc.scenario;
            hq.controller = hr_args.controller.empty() && doc.scenario.controller.kind ==
                                                              ControllerKind::none
                                ? ControllerKind::combined
                                : doc.scenario.controller.kind;
            const HeadroomResult res = min_headroom_for_nadir(hq, doc.scenario.sim);
            char line[160];
            std::snprintf(line, sizeof line,
                          "minimum headroom %.6f (nadir %.6f Hz, target %.6f Hz, %d runs)\n",
                          res.headroom, res.nadir, hq.target_nadir, res.runs);
            out << line;
            if (!hr_out.empty()) {
                emit(hr_out, out, [&](std::ostream& o) { o << headroom_to_json(hq, res); });
            }
        } else if (*sweep) {
            const Scenario s = load(sw_args).scenario;
            const auto values = parse_values(sw_values);
            const auto rows = sweep_param(s, s.controller.kind, sw_param, values, s.sim);
            emit(sw_out, out, [&](std::ostream& o) { write_sweep_csv(sw_param, rows, o); });
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

} // namespace pvfreq
