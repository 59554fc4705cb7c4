#include "pvfreq/control_blocks.hpp"

#include "pvfreq/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pvfreq {

void Deadband::validate() const {
    if (!(width >= 0.0) || !std::isfinite(width)) {
        throw ValidationError("deadband width must be >= 0");
    }
}

double Deadband::apply(double u) const {
    const double mag = std::abs(u);
    if (mag <= width) {
        return 0.0;
    }
    return std::copysign(mag - width, u);
}

double deadband_apply(const Deadband& db, double u) { return db.apply(u); }

FirstOrderLag::FirstOrderLag(double time_constant, double initial)
    : time_constant_(time_constant), y_(initial) {
    if (!(time_constant > 0.0) || !std::isfinite(time_constant)) {
        throw ValidationError("lag time constant must be > 0");
    }
}

double FirstOrderLag::step(double u, double dt) {
    // -expm1 keeps 1 - e^(-dt/T) accurate for small dt/T.
    y_ += (u - y_) * -std::expm1(-dt / time_constant_);
    return y_;
}

double lag_step(FirstOrderLag& lag, double u, double dt) { return lag.step(u, dt); }

Washout::Washout(double time_constant, double initial_state)
    : time_constant_(time_constant), x_(initial_state) {
    if (!(time_constant > 0.0) || !std::isfinite(time_constant)) {
        throw ValidationError("washout time constant must be > 0");
    }
}

double Washout::step(double u, double dt) {
    x_ = u + (x_ - u) * std::exp(-dt / time_constant_);
    return output(u);
}

double washout_step(Washout& w, double u, double dt) { return w.step(u, dt); }

void LimitSpec::validate() const {
    if (!std::isfinite(up_limit) || !std::isfinite(down_limit) || up_limit < down_limit) {
        throw ValidationError("limit up_limit must be >= down_limit");
    }
    if (rate_limit && !(*rate_limit > 0.0)) {
        throw ValidationError("rate_limit must be > 0");
    }
}

double LimitSpec::clamp(double cmd) const { return std::clamp(cmd, down_limit, up_limit); }

double LimitSpec::apply(double cmd, double prev, double dt) const {
    double out = clamp(cmd);
    if (rate_limit) {
        const double step = *rate_limit * dt;
        out = std::clamp(out, prev - step, prev + step);
        // Slewing from an infeasible prev can leave the window; the window wins.
        out = clamp(out);
    }
    return out;
}

double limit_apply(const LimitSpec& spec, double cmd, double prev, double dt) {
    return spec.apply(cmd, prev, dt);
}

} // namespace pvfreq
