#pragma once

#include "dogfight/airframe.hpp"
#include "dogfight/maneuver_types.hpp"

namespace dogfight {

struct PidGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
};

struct PidState {
    double integral = 0.0;    // accumulated error * s
    double prev_error = 0.0;  // last error sample
};

// Discrete PID as used by the control law:
//   out = kp*e + ki*integral - kd*(e - prev_error)/dt
// The derivative term carries a minus, so damping gains are negative (see
// ControllerBank defaults). The integral is clamped to integral_limit.
std::pair<double, PidState> pid_step(const PidGains& gains, PidState state, double value,
                                     double desired, double dt, double integral_limit);

struct PidChannel {
    PidGains gains;
    PidState state;
    double out_min = 0.0;
    double out_max = 0.0;
    double integral_limit = 0.0;
};

// Four-channel bank: throttle chases a fixed mach target, elevator tracks
// angle of attack, aileron tracks roll, rudder regulates sideslip to zero.
// Angle channels work in degrees, the mach channel in mach units.
struct ControllerBank {
    PidChannel mach;
    PidChannel alpha;
    PidChannel roll;
    PidChannel beta;
    double mach_target = 0.9;

    // Shipped gains: K_Ma=[10,0,0], K_alpha=[8,12,-15], K_phi=[0.2,0,0],
    // K_beta=[12,0,-4]. Derivative gains are negative because pid_step
    // subtracts the derivative term; the net effect is conventional damping.
    // The alpha and roll channels are tuned to the shipped table set.
    static ControllerBank defaults(const ActuatorLimits& limits);

    void reset();
};

ControlSurfaces control_law(const BodyState& state, const AirData& air,
                            const Setpoints& setpoints, ControllerBank& bank, double dt);

}  // namespace dogfight
