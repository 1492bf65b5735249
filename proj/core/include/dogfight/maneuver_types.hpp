#pragma once

#include <array>
#include <string_view>

namespace dogfight {

// The interface between the maneuver layer and the control layer: every
// maneuver reduces to a desired angle of attack and a desired roll.
struct Setpoints {
    double alpha_deg = 0.0;  // in [-4, 30]
    double phi_deg = 0.0;    // in [-180, 180)
};

// The eight-entry maneuver library. Integer values are the stable action
// encoding used in logs and by the learner.
enum class ManeuverId : int {
    PositionTracking = 0,
    AttitudeTracking = 1,
    StraightFlight = 2,
    Climb = 3,
    Somersault = 4,
    SplitS = 5,
    HighYoYo = 6,
    LowYoYo = 7,
};

constexpr int kManeuverCount = 8;

constexpr std::array<std::string_view, kManeuverCount> kManeuverNames = {
    "position_tracking", "attitude_tracking", "straight_flight", "climb",
    "somersault",        "split_s",           "high_yo_yo",      "low_yo_yo",
};

enum class SplitSPhase { Reverse, Pull, Recover };

// Per-aircraft maneuver memory. Persists while the same maneuver stays
// selected and is re-armed whenever the selection changes.
struct ManeuverContext {
    ManeuverId active = ManeuverId::PositionTracking;
    bool armed = false;               // false until first call for `active`
    SplitSPhase phase = SplitSPhase::Reverse;
    double alpha_hold_deg = 0.0;      // alpha captured at split-s entry
    double prev_theta_rad = 0.0;      // for the pitch rising-edge test
    bool has_prev_theta = false;
};

}  // namespace dogfight
