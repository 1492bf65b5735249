#pragma once

#include <utility>

#include "dogfight/airframe.hpp"
#include "dogfight/maneuver_types.hpp"

namespace dogfight {

// Guidance constants shared by the maneuver library. The angle-error gains
// are applied to errors expressed in degrees.
struct GuidanceParams {
    double k_chi = 0.02;             // path-pitch error gain, per deg
    double k_zeta = 0.02;            // path-yaw error gain, per deg
    double k_alpha_per_g = 4.0;      // deg of alpha per g of normal load
    double alpha_min_deg = -4.0;
    double alpha_max_deg = 20.0;
    double alpha_full_max_deg = 30.0;  // escape maneuvers may pull this hard
    double load_min_g = -1.0;
    double load_max_g = 7.5;
    double k_h = 0.1;                // yo-yo offset = k_h * V^2 / g
    double climb_pitch_deg = 20.0;
    double gravity = kGravity;
};

// Desired path pitch / path yaw of the line from own_pos to target_pos.
// Throws CoincidentPositionError when the points are closer than 1 m.
std::pair<double, double> desired_path_angles(const Vec3& own_pos, const Vec3& target_pos);

// Trajectory-frame lateral/normal load (g units) from path-angle errors.
std::pair<double, double> loads_from_angle_errors(double speed, double chi, double e_chi,
                                                  double e_zeta, const GuidanceParams& params);

// Bank the lift vector toward the commanded load: phi_d = atan2(n2, n3),
// n_n = |(n2, n3)| clipped to the load bounds. Throws on a zero load vector.
std::pair<double, double> bank_and_load(double n2, double n3, const GuidanceParams& params);

// Desired alpha from normal load, clipped to [alpha_min, alpha_max].
double alpha_from_load(double n_n, const GuidanceParams& params);

// Vertical aim offset for the yo-yos.
double yo_yo_offset(double speed, const GuidanceParams& params);

// Path pitch (chi) and path yaw (zeta) of the earth-frame velocity vector.
std::pair<double, double> path_angles(const BodyState& state);

std::pair<Setpoints, ManeuverContext> maneuver_setpoints(ManeuverId id, const BodyState& own,
                                                         const AirData& own_air,
                                                         const BodyState& opp,
                                                         ManeuverContext ctx,
                                                         const GuidanceParams& params);

// Point-mass model over (position, speed, path pitch, path yaw). Used as an
// independent oracle for the guidance laws; the combat loop never touches it.
struct Simple3DofState {
    Vec3 pos;
    double speed = 0.0;
    double chi = 0.0;   // path pitch, rad
    double zeta = 0.0;  // path yaw, rad
};

// One forward-Euler step with longitudinal/normal load in g and bank phi.
Simple3DofState simple_3dof_step(const Simple3DofState& state, double n_l, double n_n, double phi,
                                 double dt, double gravity = kGravity);

}  // namespace dogfight
