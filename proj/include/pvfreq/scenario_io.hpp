#pragma once

#include "pvfreq/compliance.hpp"
#include "pvfreq/headroom.hpp"
#include "pvfreq/metrics.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pvfreq {

/// A parsed scenario document: the scenario plus the optional compliance
/// section.
struct ScenarioDocument {
    Scenario scenario;
    ComplianceThresholds compliance;
};

/// Parses a JSON scenario document. Keys not in the schema are rejected;
/// absent keys take the values of the named preset (ei80 when none given).
/// Throws SyntaxError (with byte offset) or ValidationError.
ScenarioDocument parse_document(std::string_view text);
Scenario parse_scenario(std::string_view text);

/// Full JSON document; parse_scenario(serialize_scenario(s)) reproduces s.
std::string serialize_scenario(const Scenario& scenario, const ComplianceThresholds* compliance = nullptr);

/// Applies "path=value" overrides (numeric fields, plus controller.kind and
/// controller.inertia.recovery_clamp), then revalidates.
void apply_overrides(Scenario& scenario, std::span<const std::string> assignments);

/// Fixed 6-decimal rendering; negative zero prints as 0.000000.
std::string format_fixed6(double v);

inline constexpr std::string_view kTraceHeader =
    "t_s,f_hz,rocof_hz_per_s,dp_gov_pu,dp_pv_pu,dp_pv_droop_pu,dp_pv_inertia_pu";
inline constexpr std::string_view kMetricsHeader =
    "scenario,controller,nadir_hz,nadir_time_s,max_abs_rocof_hz_per_s,settling_freq_hz";
inline constexpr std::string_view kSweepHeader =
    "param,value,nadir_hz,nadir_time_s,max_abs_rocof_hz_per_s,settling_freq_hz";

void write_trace_csv(const Trace& trace, std::ostream& out);
Trace read_trace_csv(std::istream& in);

void write_metrics_csv(std::span<const MetricsRow> rows, std::ostream& out);
std::vector<MetricsRow> read_metrics_csv(std::istream& in);

void write_sweep_csv(std::string_view param_path, std::span<const SweepRow> rows,
                     std::ostream& out);

std::string report_to_json(const ComplianceReport& report);
std::string headroom_to_json(const HeadroomQuery& query, const HeadroomResult& result);

} // namespace pvfreq
