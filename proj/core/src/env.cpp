#include "dogfight/env.hpp"

#include <cmath>

#include "dogfight/atmosphere.hpp"
#include "dogfight/error.hpp"
#include "dogfight/trajectory.hpp"

namespace dogfight {

Observation observe(const BodyState& blue, const BodyState& red, const ObsNormalization& n) {
    const RelativeGeometry geom = relative_geometry(blue, red);
    const double zeta_d = desired_path_angles(blue.pos, red.pos).second;
    const auto [chi, zeta] = path_angles(blue);

    Observation obs;
    obs[0] = blue.pos.z / n.depth_m;
    obs[1] = blue.vel_body.norm() / n.speed_ms;
    obs[2] = blue.euler.x * kRadToDeg / n.angle_deg;
    obs[3] = blue.euler.y * kRadToDeg / n.angle_deg;
    obs[4] = chi * kRadToDeg / n.angle_deg;
    obs[5] = wrap_pi(blue.euler.z - zeta_d) * kRadToDeg / n.angle_deg;
    obs[6] = wrap_pi(zeta - zeta_d) * kRadToDeg / n.angle_deg;
    obs[7] = geom.hca_deg / n.angle_deg;
    obs[8] = geom.ata_deg / n.angle_deg;
    obs[9] = geom.aa_deg / n.angle_deg;
    obs[10] = geom.distance / n.distance_m;
    obs[11] = red.vel_body.norm() / n.speed_ms;
    return obs;
}

double reward(double prev_blue, double prev_red, double blue, double red,
              const RelativeGeometry& geom, Outcome outcome, const RewardWeights& w) {
    double failure = 0.0;
    if (outcome == Outcome::BlueWin) failure = 1.0;
    if (outcome == Outcome::RedWin) failure = -1.0;  // both failing cancels out
    const double damage = (prev_red - red) - (prev_blue - blue);
    const double angle = 180.0 - geom.ata_deg - geom.aa_deg;
    return w.failure * failure + w.damage * damage + w.angle * angle;
}

DogfightEnv::DogfightEnv(const Airframe& airframe, EpisodeConfig config, std::uint64_t seed)
    : airframe_(&airframe), config_(std::move(config)), rng_(derive_seed(seed, 0)) {
    config_.termination.max_decision_steps = config_.max_decision_steps;
}

void DogfightEnv::init_aircraft(Aircraft& a, const Vec3& pos, double yaw_deg, double mach) {
    a = Aircraft{};
    a.state.pos = pos;
    const double speed = mach * atmosphere::speed_of_sound(-pos.z);
    a.state.vel_body = {speed, 0.0, 0.0};
    a.state.euler = {0.0, 0.0, wrap_pi(yaw_deg * kDegToRad)};
    a.state.omega = {0.0, 0.0, 0.0};
    a.state.surfaces = {0.5, 0.0, 0.0, 0.0};
    a.air = air_data(a.state.vel_body, a.state.altitude());
    a.bank = config_.controllers ? *config_.controllers
                                 : ControllerBank::defaults(airframe_->config.limits);
    a.bank.reset();
    a.context = ManeuverContext{};
    a.status = CombatStatus{};
}

Observation DogfightEnv::reset() {
    const InitRanges& r = config_.init;
    Vec3 blue_pos, red_pos;
    do {
        blue_pos = {rng_.uniform(r.p1_min, r.p1_max), rng_.uniform(r.p2_min, r.p2_max),
                    rng_.uniform(r.p3_min, r.p3_max)};
        red_pos = {rng_.uniform(r.p1_min, r.p1_max), rng_.uniform(r.p2_min, r.p2_max),
                   rng_.uniform(r.p3_min, r.p3_max)};
    } while ((red_pos - blue_pos).norm() < 1.0);  // resample degenerate draws

    const double blue_mach = rng_.uniform(r.mach_min, r.mach_max);
    const double blue_yaw = rng_.uniform(r.yaw_min_deg, r.yaw_max_deg);
    const double red_mach = rng_.uniform(r.mach_min, r.mach_max);
    const double red_yaw = rng_.uniform(r.yaw_min_deg, r.yaw_max_deg);

    init_aircraft(blue_, blue_pos, blue_yaw, blue_mach);
    init_aircraft(red_, red_pos, red_yaw, red_mach);
    decision_steps_ = 0;
    done_ = false;
    outcome_ = Outcome::Ongoing;
    return observe(blue_.state, red_.state, config_.normalization);
}

Observation DogfightEnv::reset(const ScriptedInit& init) {
    init_aircraft(blue_, init.blue_pos, init.blue_yaw_deg, init.blue_mach);
    init_aircraft(red_, init.red_pos, init.red_yaw_deg, init.red_mach);
    decision_steps_ = 0;
    done_ = false;
    outcome_ = Outcome::Ongoing;
    return observe(blue_.state, red_.state, config_.normalization);
}

void DogfightEnv::log_substep(double t, const Aircraft& a, const char* side, ManeuverId maneuver,
                              const RelativeGeometry& geom) {
    if (trajectory_) trajectory_->row(t, side, a.state, a.air, a.status.blood, maneuver, geom);
}

StepResult DogfightEnv::step(ManeuverId blue_action) {
    if (done_) throw ContractViolation("env", "step called on a finished episode");

    // Both sides commit to a maneuver from the period-start state.
    const RelativeGeometry red_view = relative_geometry(red_.state, blue_.state);
    const ManeuverId red_action = decide(red_.state, red_.air, blue_.state, blue_.air, red_view,
                                         config_.red_options, config_.dt_params);

    const double prev_blue_blood = blue_.status.blood;
    const double prev_red_blood = red_.status.blood;

    AeroDiagnostics diag;
    RelativeGeometry blue_view = relative_geometry(blue_.state, red_.state);
    StepInfo info;
    info.blue_maneuver = blue_action;
    info.red_maneuver = red_action;

    for (int sub = 1; sub <= config_.substeps; ++sub) {
        // Commands for both aircraft from the pre-substep states.
        const auto [blue_sp, blue_ctx] = maneuver_setpoints(
            blue_action, blue_.state, blue_.air, red_.state, blue_.context, config_.guidance);
        const auto [red_sp, red_ctx] = maneuver_setpoints(red_action, red_.state, red_.air,
                                                          blue_.state, red_.context,
                                                          config_.guidance);
        blue_.context = blue_ctx;
        red_.context = red_ctx;
        const ControlSurfaces blue_cmd =
            control_law(blue_.state, blue_.air, blue_sp, blue_.bank, config_.dt);
        const ControlSurfaces red_cmd =
            control_law(red_.state, red_.air, red_sp, red_.bank, config_.dt);

        // Advance; a diverging airframe keeps its last finite state and is
        // treated as crashed.
        const auto advance = [&](Aircraft& aircraft, const ControlSurfaces& cmd) {
            try {
                aircraft.state = dogfight::step(aircraft.state, cmd, config_.dt, *airframe_, &diag);
                aircraft.air = air_data(aircraft.state.vel_body, aircraft.state.altitude());
            } catch (const SimError&) {
                aircraft.status.crashed = true;
                aircraft.status.crash_reason = CrashReason::NonFinite;
            }
        };
        advance(blue_, blue_cmd);
        advance(red_, red_cmd);

        blue_view = relative_geometry(blue_.state, red_.state);
        const RelativeGeometry red_view_now = relative_geometry(red_.state, blue_.state);
        const bool blue_under_fire = in_engagement_zone(red_view_now, config_.zone);
        const bool red_under_fire = in_engagement_zone(blue_view, config_.zone);
        apply_damage(blue_.status, red_.status, blue_under_fire, red_under_fire, config_.dt);

        info.substeps = sub;
        const double t = decision_steps_ * config_.substeps * config_.dt + sub * config_.dt;
        log_substep(t, blue_, "blue", blue_action, blue_view);
        log_substep(t, red_, "red", red_action, red_view_now);

        outcome_ = check_termination(blue_.state, red_.state, blue_.status, red_.status,
                                     blue_view, decision_steps_, config_.termination);
        if (outcome_ != Outcome::Ongoing) {
            done_ = true;
            break;
        }
    }

    ++decision_steps_;
    if (!done_ && decision_steps_ >= config_.max_decision_steps) {
        outcome_ = Outcome::Tie;
        done_ = true;
    }

    StepResult result;
    result.obs = observe(blue_.state, red_.state, config_.normalization);
    result.reward = reward(prev_blue_blood, prev_red_blood, blue_.status.blood, red_.status.blood,
                           blue_view, outcome_, config_.reward);
    result.done = done_;
    result.outcome = outcome_;
    info.blue_blood = blue_.status.blood;
    info.red_blood = red_.status.blood;
    info.aero_clamps = diag.clamped_lookups;
    result.info = info;
    return result;
}

}  // namespace dogfight
