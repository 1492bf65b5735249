#pragma once

#include <filesystem>

#include "dogfight/aero_model.hpp"
#include "dogfight/engine_model.hpp"
#include "dogfight/math.hpp"

namespace dogfight {

// Per-channel actuator amplitude and rate limits.
struct ChannelLimit {
    double min = 0.0;
    double max = 0.0;
    double rate = 0.0;  // units/s
};

struct ActuatorLimits {
    ChannelLimit throttle{0.0, 1.0, 1.0};
    ChannelLimit elevator{-25.0, 25.0, 60.0};
    ChannelLimit aileron{-21.5, 21.5, 80.0};
    ChannelLimit rudder{-30.0, 30.0, 120.0};
};

struct AircraftConfig {
    double mass_kg = 9295.44;
    Mat3 inertia = f16_inertia();
    double wing_area_m2 = 27.87;
    double span_m = 9.144;
    double chord_m = 3.45;
    double xcg = 0.30;      // cg position, fraction of chord
    double xcg_ref = 0.35;  // table reference cg
    ActuatorLimits limits;
    double gravity = kGravity;

    static Mat3 f16_inertia() {
        Mat3 j = Mat3::diagonal(12874.8, 75673.6, 85552.1);
        j(0, 2) = j(2, 0) = -1331.4;
        return j;
    }
};

// Full rigid-body state. Earth frame is north-west-down: p3 is depth, so
// altitude = -p3. Euler angles are Z-Y-X (roll, pitch, yaw) with pitch kept
// in (-pi/2, pi/2) and roll/yaw wrapped to [-pi, pi).
struct BodyState {
    Vec3 pos;       // m
    Vec3 vel_body;  // m/s (u, v, w)
    Vec3 euler;     // rad (phi, theta, psi)
    Vec3 omega;     // rad/s (p, q, r)
    ControlSurfaces surfaces;

    double altitude() const { return -pos.z; }
    bool finite() const {
        return pos.finite() && vel_body.finite() && euler.finite() && omega.finite();
    }
};

struct AirData {
    double speed = 0.0;      // m/s
    double alpha_rad = 0.0;  // angle of attack
    double beta_rad = 0.0;   // sideslip
    double mach = 0.0;
    double qbar = 0.0;       // dynamic pressure, Pa
};

struct StateRates {
    Vec3 pos_rate;
    Vec3 vel_rate;
    Vec3 euler_rate;
    Vec3 omega_rate;
    double norm_excluding_position() const;
};

struct ForceTorque {
    Vec3 force;   // the subtracted air-force vector (drag, side, lift), N
    Vec3 torque;  // body torque (l, m, n), N*m
};

// Aggregate handed around by the simulation: mass properties + data deck.
struct Airframe {
    AircraftConfig config;
    AeroModel aero;
    EngineModel engine;
};

// Loads the aero/engine table set from a data directory (e.g. data/f16).
Airframe load_airframe(const std::filesystem::path& data_dir);

// Z-Y-X (yaw-pitch-roll) rotation taking body vectors to the earth frame.
Mat3 rotation_body_to_earth(const Vec3& euler);

// Euler-angle kinematics; throws SingularAttitudeError when |cos(pitch)| < 1e-6.
Vec3 euler_rates(const Vec3& euler, const Vec3& omega);

// Speed, incidence angles, mach and dynamic pressure from body velocity.
// Throws ZeroVelocityError when the velocity vanishes.
AirData air_data(const Vec3& vel_body, double altitude_m);

ForceTorque aero_forces_moments(const AirData& air, const ControlSurfaces& surfaces,
                                const Vec3& omega, const AircraftConfig& config,
                                const AeroModel& aero, AeroDiagnostics* diag = nullptr);

double thrust(const EngineModel& engine, double throttle, double altitude_m, double mach);

StateRates derivatives(const BodyState& state, const Airframe& airframe,
                       AeroDiagnostics* diag = nullptr);

// Advances actuators under their rate/amplitude limits, then takes one RK4
// step. Attitude is integrated as a quaternion so vertical maneuvers stay
// well defined; the returned Euler angles are the canonical chart.
BodyState step(const BodyState& state, const ControlSurfaces& commanded, double dt,
               const Airframe& airframe, AeroDiagnostics* diag = nullptr);

struct TrimResult {
    BodyState state;
    ControlSurfaces controls;
    double residual = 0.0;  // |state rates| excluding position
};

// Finds straight-and-level equilibrium at the requested point. Throws
// NoConvergenceError if the residual cannot be brought below 1e-3.
TrimResult trim_search(double altitude_m, double mach, const Airframe& airframe);

}  // namespace dogfight
