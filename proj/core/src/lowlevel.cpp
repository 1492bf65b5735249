#include "dogfight/lowlevel.hpp"

#include <algorithm>
#include <cmath>

namespace dogfight {

std::pair<double, PidState> pid_step(const PidGains& gains, PidState state, double value,
                                     double desired, double dt, double integral_limit) {
    const double error = desired - value;
    state.integral += error * dt;
    if (gains.ki != 0.0 && integral_limit > 0.0) {
        const double bound = integral_limit / std::abs(gains.ki);
        state.integral = std::clamp(state.integral, -bound, bound);
    }
    const double derivative = (error - state.prev_error) / dt;
    state.prev_error = error;
    const double out = gains.kp * error + gains.ki * state.integral - gains.kd * derivative;
    return {out, state};
}

ControllerBank ControllerBank::defaults(const ActuatorLimits& limits) {
    ControllerBank bank;
    const auto channel = [](PidGains gains, const ChannelLimit& lim) {
        PidChannel ch;
        ch.gains = gains;
        ch.out_min = lim.min;
        ch.out_max = lim.max;
        // Anti-windup: the integral term alone may supply at most half the
        // command range.
        ch.integral_limit = 0.5 * (lim.max - lim.min);
        return ch;
    };
    bank.mach = channel({10.0, 0.0, 0.0}, limits.throttle);
    bank.alpha = channel({8.0, 12.0, -15.0}, limits.elevator);
    bank.roll = channel({0.2, 0.0, 0.0}, limits.aileron);
    bank.beta = channel({12.0, 0.0, -4.0}, limits.rudder);
    return bank;
}

void ControllerBank::reset() {
    mach.state = PidState{};
    alpha.state = PidState{};
    roll.state = PidState{};
    beta.state = PidState{};
}

ControlSurfaces control_law(const BodyState& state, const AirData& air,
                            const Setpoints& setpoints, ControllerBank& bank, double dt) {
    const auto run = [dt](PidChannel& ch, double value, double desired) {
        auto [out, next] = pid_step(ch.gains, ch.state, value, desired, dt, ch.integral_limit);
        ch.state = next;
        return std::clamp(out, ch.out_min, ch.out_max);
    };

    ControlSurfaces cmd;
    cmd.throttle = run(bank.mach, air.mach, bank.mach_target);
    cmd.elevator_deg = run(bank.alpha, air.alpha_rad * kRadToDeg, setpoints.alpha_deg);
    // Feed the wrapped roll error through as (0, error) so the channel never
    // commands the long way around.
    const double roll_error = wrap_deg(setpoints.phi_deg - state.euler.x * kRadToDeg);
    cmd.aileron_deg = run(bank.roll, 0.0, roll_error);
    cmd.rudder_deg = run(bank.beta, air.beta_rad * kRadToDeg, 0.0);
    return cmd;
}

}  // namespace dogfight
