#pragma once

#include <optional>

namespace pvfreq {

/// Offset-style deadband on a per-unit frequency deviation. Output is zero
/// inside the band and shifted toward zero by `width` outside it, so the
/// characteristic is continuous.
struct Deadband {
    double width = 0.0;

    void validate() const;
    double apply(double u) const;
};

double deadband_apply(const Deadband& db, double u);

/// First-order low-pass lag 1 / (1 + sT) with unit DC gain.
class FirstOrderLag {
public:
    explicit FirstOrderLag(double time_constant, double initial = 0.0);

    double time_constant() const noexcept { return time_constant_; }
    double value() const noexcept { return y_; }
    void reset(double y) noexcept { y_ = y; }

    /// Exact zero-order-hold update for input held over `dt`.
    double step(double u, double dt);

    /// Continuous-time state derivative, for use inside an ODE integrator.
    double derivative(double u) const { return derivative(u, y_); }
    double derivative(double u, double y) const { return (u - y) / time_constant_; }

private:
    double time_constant_;
    double y_;
};

double lag_step(FirstOrderLag& lag, double u, double dt);

/// Washout (high-pass) s / (1 + sT_w). The state x tracks the input through
/// a lag; the output (u - x) / T_w approximates du/dt.
class Washout {
public:
    explicit Washout(double time_constant, double initial_state = 0.0);

    double time_constant() const noexcept { return time_constant_; }
    double state() const noexcept { return x_; }
    void reset(double x) noexcept { x_ = x; }

    /// Output for input u given the current state, without advancing it.
    double output(double u) const { return output(u, x_); }
    double output(double u, double x) const { return (u - x) / time_constant_; }

    /// Exact ZOH advance of the state; returns the post-update output.
    double step(double u, double dt);

private:
    double time_constant_;
    double x_;
};

double washout_step(Washout& w, double u, double dt);

/// Magnitude window plus optional slew limit.
struct LimitSpec {
    double up_limit = 0.0;
    double down_limit = 0.0;
    std::optional<double> rate_limit; // pu/s; absent means unlimited

    void validate() const;
    double clamp(double cmd) const;
    double apply(double cmd, double prev, double dt) const;
};

double limit_apply(const LimitSpec& spec, double cmd, double prev, double dt);

} // namespace pvfreq
