#include <doctest.h>

#include "pvfreq/compliance.hpp"
#include "pvfreq/error.hpp"
#include "pvfreq/metrics.hpp"
#include "pvfreq/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

using namespace pvfreq;

namespace {

ControllerSpec droop_only(double t_lag, double deadband = 0.0) {
    ControllerSpec c;
    c.kind = ControllerKind::droop;
    c.droop.r_droop = 0.05;
    c.droop.deadband.width = deadband;
    c.droop.t_lag = t_lag;
    return c;
}

SampledResponse first_order(double T, double horizon) {
    SampledResponse r;
    for (int k = 0; k * 0.01 <= horizon + 1e-12; ++k) {
        const double t = k * 0.01;
        r.t.push_back(t);
        r.y.push_back(t <= 1.0 ? 0.0 : 0.04 * (1.0 - std::exp(-(t - 1.0) / T)));
    }
    return r;
}

} // namespace

TEST_CASE("droop step response is a two-lag cascade") {
    const PVPlantConfig plant; // headroom 0.05, t_inv 0.05
    const ComplianceThresholds th;
    const auto r = run_step_test(droop_only(0.2), plant, th, SimConfig{});
    CHECK(r.y.back() == doctest::Approx(0.04).epsilon(1e-6));
    const double t1 = 0.2;
    const double t2 = plant.t_inv;
    for (std::size_t k = 0; k < r.t.size(); ++k) {
        const double tau = r.t[k] - 1.0;
        const double exact =
            tau <= 0.0 ? 0.0
                       : 0.04 * (1.0 - (t1 * std::exp(-tau / t1) - t2 * std::exp(-tau / t2)) /
                                           (t1 - t2));
        CHECK(std::abs(r.y[k] - exact) < 0.04 * 0.03);
    }
    const auto rep = evaluate_compliance(r, th);
    CHECK(rep.pass);
    REQUIRE(rep.metrics);
    CHECK(rep.metrics->final_value == doctest::Approx(0.04).epsilon(1e-4));
}

TEST_CASE("pure inertia step has no sustained response") {
    ControllerSpec c;
    c.kind = ControllerKind::inertia;
    const auto r = run_step_test(c, PVPlantConfig{}, ComplianceThresholds{}, SimConfig{});
    CHECK_THROWS_AS(compute_step_response_metrics(r, 1.0), NoResponseError);
    const auto rep = evaluate_compliance(r, ComplianceThresholds{});
    CHECK_FALSE(rep.pass);
    CHECK(rep.reason.find("NoResponse") == 0);
}

TEST_CASE("step inside the deadband") {
    const auto r = run_step_test(droop_only(0.2, 0.003), PVPlantConfig{}, ComplianceThresholds{},
                                 SimConfig{});
    for (double y : r.y) {
        CHECK(y == 0.0);
    }
}

TEST_CASE("controller kind none is rejected") {
    ControllerSpec c;
    CHECK_THROWS_AS(run_step_test(c, PVPlantConfig{}, ComplianceThresholds{}, SimConfig{}),
                    ValidationError);
}

TEST_CASE("grading synthetic first-order responses") {
    const ComplianceThresholds th;
    const auto fast = evaluate_compliance(first_order(1.0, 60.0), th);
    CHECK(fast.pass);
    REQUIRE(fast.metrics);
    CHECK(fast.metrics->rise_time == doctest::Approx(2.20).epsilon(0.01));
    CHECK(fast.metrics->settling_time == doctest::Approx(3.69).epsilon(0.01));

    const auto slow = evaluate_compliance(first_order(5.0, 60.0), th);
    CHECK_FALSE(slow.pass);
    REQUIRE(slow.metrics);
    CHECK(slow.metrics->rise_time == doctest::Approx(5.0 * std::log(9.0)).epsilon(0.005));
    for (const auto& c : slow.criteria) {
        if (c.name == "rise_time") {
            CHECK_FALSE(c.pass);
        }
    }

    SampledResponse zero = first_order(1.0, 20.0);
    std::fill(zero.y.begin(), zero.y.end(), 0.0);
    const auto none = evaluate_compliance(zero, th);
    CHECK_FALSE(none.pass);
    CHECK(none.reason.find("NoResponse") == 0);
    CHECK(format_report(none).find("overall: FAIL") != std::string::npos);
}

TEST_CASE("loosening a threshold never turns pass into fail") {
    const double scales[] = {0.5, 1.0, 1.5, 3.0};
    for (double T : {0.3, 1.0, 2.0, 4.0}) {
        const auto resp = first_order(T, 60.0);
        for (double s : scales) {
            ComplianceThresholds tight;
            tight.max_reaction *= s;
            tight.max_rise *= s;
            tight.max_settling *= s;
            tight.max_overshoot *= s;
            tight.settling_band *= s;
            const auto base = evaluate_compliance(resp, tight);
            for (int field = 0; field < 5; ++field) {
                ComplianceThresholds loose = tight;
                double* v[] = {&loose.max_reaction, &loose.max_rise, &loose.max_settling,
                               &loose.max_overshoot, &loose.settling_band};
                *v[field] *= 2.0;
                const auto rep = evaluate_compliance(resp, loose);
                CHECK((!base.pass || rep.pass));
            }
        }
    }
}

TEST_CASE("slower droop lag never rises faster") {
    for (double t_inv : {0.02, 0.05, 0.2}) {
        PVPlantConfig plant;
        plant.t_inv = t_inv;
        double prev = 0.0;
        for (double t_lag : {0.05, 0.1, 0.2, 0.4, 0.8, 1.6}) {
            ComplianceThresholds th;
            th.t_end = 30.0;
            const auto r = run_step_test(droop_only(t_lag), plant, th, SimConfig{});
            const double rise = compute_step_response_metrics(r, th.step_time).rise_time;
            CHECK(rise >= prev);
            prev = rise;
        }
    }
}

TEST_CASE("compliant controller can still miss the ercot80 nadir target") {
    std::ifstream in(std::string(PVFREQ_SCENARIO_DIR) + "/ercot80_droop_compliant.json");
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    const ScenarioDocument doc = parse_document(ss.str());
    const auto& s = doc.scenario;

    const auto rep = evaluate_compliance(
        run_step_test(s.controller, s.system.pv, doc.compliance, s.sim), doc.compliance);
    CHECK(rep.pass);

    const auto m = compute_frequency_metrics(run_simulation(s), s.contingency.t_event);
    CHECK(m.nadir < 59.5);
}
