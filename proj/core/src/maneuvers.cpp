#include "dogfight/maneuvers.hpp"

#include <algorithm>
#include <cmath>

#include "dogfight/error.hpp"

namespace dogfight {

std::pair<double, double> desired_path_angles(const Vec3& own_pos, const Vec3& target_pos) {
    const Vec3 d = target_pos - own_pos;
    if (d.norm() < 1.0) throw CoincidentPositionError("maneuvers");
    const double horizontal = std::sqrt(d.x * d.x + d.y * d.y);
    const double chi_d = std::atan2(-d.z, horizontal);
    const double zeta_d = std::atan2(d.y, d.x);
    return {chi_d, zeta_d};
}

std::pair<double, double> loads_from_angle_errors(double speed, double chi, double e_chi,
                                                  double e_zeta, const GuidanceParams& p) {
    const double v_over_g = speed / p.gravity;
    const double n2 = v_over_g * p.k_zeta * e_zeta * std::cos(chi);
    const double n3 = v_over_g * p.k_chi * e_chi + std::cos(chi);
    return {n2, n3};
}

std::pair<double, double> bank_and_load(double n2, double n3, const GuidanceParams& p) {
    if (n2 == 0.0 && n3 == 0.0) throw ContractViolation("maneuvers", "zero load vector");
    const double phi_d = std::atan2(n2, n3);
    const double n_n = std::clamp(std::sqrt(n2 * n2 + n3 * n3), p.load_min_g, p.load_max_g);
    return {phi_d, n_n};
}

double alpha_from_load(double n_n, const GuidanceParams& p) {
    return std::clamp(p.k_alpha_per_g * n_n, p.alpha_min_deg, p.alpha_max_deg);
}

double yo_yo_offset(double speed, const GuidanceParams& p) {
    return p.k_h * speed * speed / p.gravity;
}

std::pair<double, double> path_angles(const BodyState& state) {
    const Vec3 v = rotation_body_to_earth(state.euler) * state.vel_body;
    const double horizontal = std::sqrt(v.x * v.x + v.y * v.y);
    return {std::atan2(-v.z, horizontal), std::atan2(v.y, v.x)};
}

namespace {

// The tracking pipeline: angle errors -> loads -> bank and alpha. Errors are
// wrapped so the pipeline never commands the long way around, and fed to the
// load law in degrees: the gains are degree-calibrated like the control-law
// gains (per-radian errors would make the lateral servo ~57x slower than any
// usable pursuit).
Setpoints track(double speed, double chi, double e_chi, double e_zeta,
                const GuidanceParams& p) {
    const auto [n2, n3] = loads_from_angle_errors(speed, chi, wrap_pi(e_chi) * kRadToDeg,
                                                  wrap_pi(e_zeta) * kRadToDeg, p);
    const auto [phi_d, n_n] = bank_and_load(n2, n3, p);
    return {alpha_from_load(n_n, p), phi_d * kRadToDeg};
}

// Wings-level variant used by straight flight and climb: no lateral
// regulation, normal load taken directly from the pitch-error channel.
Setpoints hold_pitch(double speed, double chi, double chi_d, const GuidanceParams& p) {
    const auto [n2, n3] =
        loads_from_angle_errors(speed, chi, wrap_pi(chi_d - chi) * kRadToDeg, 0.0, p);
    (void)n2;
    const double n_n = std::clamp(n3, p.load_min_g, p.load_max_g);
    return {alpha_from_load(n_n, p), 0.0};
}

Setpoints yo_yo(const BodyState& own, const AirData& air, const BodyState& opp, bool high,
                const GuidanceParams& p) {
    const Vec3 d = opp.pos - own.pos;
    if (d.norm() < 1.0) throw CoincidentPositionError("maneuvers");
    const double horizontal = std::sqrt(d.x * d.x + d.y * d.y);
    const double offset = yo_yo_offset(air.speed, p);
    const double chi_d = std::atan2(-d.z + (high ? offset : -offset), horizontal);
    const double zeta_d = std::atan2(d.y, d.x);
    const auto [chi, zeta] = path_angles(own);
    return track(air.speed, chi, chi_d - chi, wrap_pi(zeta_d - zeta), p);
}

}  // namespace

std::pair<Setpoints, ManeuverContext> maneuver_setpoints(ManeuverId id, const BodyState& own,
                                                         const AirData& own_air,
                                                         const BodyState& opp,
                                                         ManeuverContext ctx,
                                                         const GuidanceParams& p) {
    if (ctx.active != id || !ctx.armed) {
        ctx = ManeuverContext{};
        ctx.active = id;
        ctx.armed = true;
        ctx.alpha_hold_deg = own_air.alpha_rad * kRadToDeg;
    }

    Setpoints sp;
    switch (id) {
        case ManeuverId::PositionTracking: {
            const auto [chi_d, zeta_d] = desired_path_angles(own.pos, opp.pos);
            const auto [chi, zeta] = path_angles(own);
            sp = track(own_air.speed, chi, chi_d - chi, wrap_pi(zeta_d - zeta), p);
            break;
        }
        case ManeuverId::AttitudeTracking: {
            const auto [chi_d, zeta_d] = desired_path_angles(own.pos, opp.pos);
            const auto [chi, zeta] = path_angles(own);
            (void)zeta;
            sp = track(own_air.speed, chi, chi_d - own.euler.y, wrap_pi(zeta_d - own.euler.z), p);
            break;
        }
        case ManeuverId::StraightFlight: {
            const auto [chi, zeta] = path_angles(own);
            (void)zeta;
            sp = hold_pitch(own_air.speed, chi, 0.0, p);
            break;
        }
        case ManeuverId::Climb: {
            const auto [chi, zeta] = path_angles(own);
            (void)zeta;
            sp = hold_pitch(own_air.speed, chi, p.climb_pitch_deg * kDegToRad, p);
            break;
        }
        case ManeuverId::Somersault: {
            const bool upright = std::abs(own.euler.x) <= 0.5 * kPi;
            sp.phi_deg = upright ? 0.0 : -180.0;
            sp.alpha_deg = p.alpha_full_max_deg;
            break;
        }
        case ManeuverId::SplitS: {
            const double theta = own.euler.y;
            if (ctx.phase == SplitSPhase::Reverse) {
                const double inverted_error =
                    std::abs(wrap_deg(own.euler.x * kRadToDeg - 180.0));
                if (inverted_error < 10.0) ctx.phase = SplitSPhase::Pull;
            }
            if (ctx.phase == SplitSPhase::Pull) {
                // Leave the pull when pitch rises back through zero from below.
                if (ctx.has_prev_theta && ctx.prev_theta_rad < 0.0 && theta >= 0.0)
                    ctx.phase = SplitSPhase::Recover;
            }
            switch (ctx.phase) {
                case SplitSPhase::Reverse:
                    sp.phi_deg = -180.0;
                    sp.alpha_deg = ctx.alpha_hold_deg;
                    break;
                case SplitSPhase::Pull:
                    // The pull passes through nose-down vertical, where the
                    // attitude chart flips from inverted to upright; command
                    // whichever hemisphere the body is in so the pull stays
                    // in-plane (same rule as the somersault). Near the
                    // vertical, bank is ill-defined and chart jumps would
                    // feed the roll loop, so hold the current bank there.
                    if (std::abs(own.euler.y) > 65.0 * kDegToRad) {
                        sp.phi_deg = own.euler.x * kRadToDeg;
                    } else {
                        sp.phi_deg = std::abs(own.euler.x) <= 0.5 * kPi ? 0.0 : -180.0;
                    }
                    sp.alpha_deg = p.alpha_full_max_deg;
                    break;
                case SplitSPhase::Recover: {
                    const auto [chi, zeta] = path_angles(own);
                    (void)zeta;
                    sp = hold_pitch(own_air.speed, chi, 0.0, p);
                    break;
                }
            }
            ctx.prev_theta_rad = theta;
            ctx.has_prev_theta = true;
            break;
        }
        case ManeuverId::HighYoYo:
            sp = yo_yo(own, own_air, opp, true, p);
            break;
        case ManeuverId::LowYoYo:
            sp = yo_yo(own, own_air, opp, false, p);
            break;
    }

    sp.alpha_deg = std::clamp(sp.alpha_deg, p.alpha_min_deg, p.alpha_full_max_deg);
    sp.phi_deg = wrap_deg(sp.phi_deg);
    return {sp, ctx};
}

Simple3DofState simple_3dof_step(const Simple3DofState& s, double n_l, double n_n, double phi,
                                 double dt, double gravity) {
    const double cchi = std::cos(s.chi);
    if (std::abs(cchi) < 1e-6)
        throw SingularAttitudeError(cchi);
    Simple3DofState out;
    out.pos.x = s.pos.x + s.speed * cchi * std::cos(s.zeta) * dt;
    out.pos.y = s.pos.y + s.speed * cchi * std::sin(s.zeta) * dt;
    out.pos.z = s.pos.z - s.speed * std::sin(s.chi) * dt;
    out.speed = s.speed + gravity * (n_l - std::sin(s.chi)) * dt;
    out.chi = s.chi + gravity * (n_n * std::cos(phi) - cchi) / s.speed * dt;
    out.zeta = s.zeta + gravity * n_n * std::sin(phi) / (s.speed * cchi) * dt;
    return out;
}

}  // namespace dogfight
