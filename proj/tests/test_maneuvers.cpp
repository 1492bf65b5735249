#include <doctest.h>

#include <cmath>

#include "dogfight/engagement.hpp"
#include "dogfight/error.hpp"
#include "dogfight/lowlevel.hpp"
#include "dogfight/maneuvers.hpp"
#include "dogfight/rng.hpp"
#include "test_helpers.hpp"

using namespace dogfight;
using testutil::f16;

namespace {
const GuidanceParams kParams;
}

TEST_CASE("desired path angles: dead ahead co-altitude") {
    const auto [chi, zeta] = desired_path_angles({0, 0, -5000}, {1000, 0, -5000});
    CHECK(chi == doctest::Approx(0.0));
    CHECK(zeta == doctest::Approx(0.0));
}

TEST_CASE("desired path angles: target abeam and target above") {
    const auto [chi1, zeta1] = desired_path_angles({0, 0, -5000}, {0, 1000, -5000});
    CHECK(chi1 == doctest::Approx(0.0));
    CHECK(zeta1 == doctest::Approx(kPi / 2.0));
    const auto [chi2, zeta2] = desired_path_angles({0, 0, -5000}, {1000, 0, -6000});
    CHECK(chi2 == doctest::Approx(kPi / 4.0));
    CHECK(zeta2 == doctest::Approx(0.0));
}

TEST_CASE("desired path angles: coincident positions are an error") {
    CHECK_THROWS_AS(desired_path_angles({0, 0, -5000}, {0.5, 0, -5000}),
                    CoincidentPositionError);
}

TEST_CASE("loads: level flight needs one g") {
    const auto [n2, n3] = loads_from_angle_errors(200.0, 0.0, 0.0, 0.0, kParams);
    CHECK(n2 == doctest::Approx(0.0));
    CHECK(n3 == doctest::Approx(1.0));
}

TEST_CASE("loads: pitch error term") {
    const auto [n2, n3] = loads_from_angle_errors(200.0, 0.0, 0.1, 0.0, kParams);
    (void)n2;
    CHECK(n3 == doctest::Approx((200.0 / 9.81) * 0.02 * 0.1 + 1.0).epsilon(1e-9));
    CHECK(n3 == doctest::Approx(1.0408).epsilon(1e-3));
}

TEST_CASE("loads: climbing flight needs cos(chi) g") {
    const auto [n2, n3] =
        loads_from_angle_errors(200.0, 60.0 * kDegToRad, 0.0, 0.0, kParams);
    CHECK(n2 == doctest::Approx(0.0));
    CHECK(n3 == doctest::Approx(0.5));
}

TEST_CASE("bank and load: wings level, diagonal, and clipping") {
    const auto [phi0, n0] = bank_and_load(0.0, 1.0, kParams);
    CHECK(phi0 == doctest::Approx(0.0));
    CHECK(n0 == doctest::Approx(1.0));
    const auto [phi1, n1] = bank_and_load(1.0, 1.0, kParams);
    CHECK(phi1 == doctest::Approx(kPi / 4.0));
    CHECK(n1 == doctest::Approx(std::sqrt(2.0)));
    const auto [phi2, n2] = bank_and_load(0.0, 10.0, kParams);
    (void)phi2;
    CHECK(n2 == doctest::Approx(7.5));
    CHECK_THROWS_AS(bank_and_load(0.0, 0.0, kParams), ContractViolation);
}

TEST_CASE("alpha from load: gain and clips") {
    CHECK(alpha_from_load(1.0, kParams) == doctest::Approx(4.0));
    CHECK(alpha_from_load(6.0, kParams) == doctest::Approx(20.0));
    CHECK(alpha_from_load(-2.0, kParams) == doctest::Approx(-4.0));
}

TEST_CASE("yo-yo offset: magnitude and quadratic scaling") {
    CHECK(yo_yo_offset(300.0, kParams) == doctest::Approx(0.1 * 300.0 * 300.0 / 9.81));
    CHECK(yo_yo_offset(300.0, kParams) == doctest::Approx(917.4).epsilon(1e-3));
    CHECK(yo_yo_offset(0.0, kParams) == doctest::Approx(0.0));
    CHECK(yo_yo_offset(120.0, kParams) ==
          doctest::Approx(4.0 * yo_yo_offset(60.0, kParams)));
}

namespace {

BodyState level_state(double speed, double yaw_rad = 0.0, Vec3 pos = {0, 0, -5000}) {
    BodyState s;
    s.pos = pos;
    s.vel_body = {speed, 0.0, 0.0};
    s.euler = {0.0, 0.0, yaw_rad};
    return s;
}

Setpoints run_maneuver(ManeuverId id, const BodyState& own, const BodyState& opp,
                       ManeuverContext* ctx = nullptr) {
    ManeuverContext local;
    ManeuverContext& c = ctx ? *ctx : local;
    const AirData air = air_data(own.vel_body, own.altitude());
    auto [sp, next] = maneuver_setpoints(id, own, air, opp, c, kParams);
    c = next;
    return sp;
}

}  // namespace

TEST_CASE("straight flight at level path commands one-g alpha, wings level") {
    const BodyState own = level_state(200.0);
    const Setpoints sp = run_maneuver(ManeuverId::StraightFlight, own,
                                      level_state(200.0, 0.0, {5000, 0, -5000}));
    CHECK(sp.alpha_deg == doctest::Approx(4.0));
    CHECK(sp.phi_deg == doctest::Approx(0.0));
}

TEST_CASE("somersault commands full alpha and the roll hemisphere") {
    BodyState own = level_state(200.0);
    own.euler.x = 170.0 * kDegToRad;
    Setpoints sp = run_maneuver(ManeuverId::Somersault, own, level_state(200.0));
    CHECK(std::abs(sp.phi_deg) == doctest::Approx(180.0));
    CHECK(sp.alpha_deg == doctest::Approx(30.0));
    own.euler.x = 20.0 * kDegToRad;
    sp = run_maneuver(ManeuverId::Somersault, own, level_state(200.0));
    CHECK(sp.phi_deg == doctest::Approx(0.0));
}

TEST_CASE("low yo-yo aim point depression matches the offset formula") {
    const double chi_d = std::atan2(-yo_yo_offset(250.0, kParams), 2000.0);
    CHECK(chi_d * kRadToDeg == doctest::Approx(-17.67).epsilon(1e-3));
    const BodyState own = level_state(250.0);
    const BodyState opp = level_state(250.0, 0.0, {2000, 0, -5000});
    const Setpoints sp = run_maneuver(ManeuverId::LowYoYo, own, opp);
    CHECK(sp.alpha_deg >= kParams.alpha_min_deg);
    CHECK(sp.alpha_deg <= kParams.alpha_full_max_deg);
}

TEST_CASE("high yo-yo aims above, low yo-yo below, for any geometry") {
    Rng rng(23);
    for (int i = 0; i < 200; ++i) {
        const Vec3 own_pos{rng.uniform(-3000, 3000), rng.uniform(-3000, 3000),
                           rng.uniform(-8000, -3000)};
        const Vec3 opp_pos{own_pos.x + rng.uniform(500, 4000),
                           own_pos.y + rng.uniform(-2000, 2000),
                           own_pos.z + rng.uniform(-1000, 1000)};
        const double v = rng.uniform(100, 350);
        const double horizontal = std::hypot(opp_pos.x - own_pos.x, opp_pos.y - own_pos.y);
        const double offset = yo_yo_offset(v, kParams);
        const double dz = opp_pos.z - own_pos.z;
        const double chi_plain = std::atan2(-dz, horizontal);
        CHECK(std::atan2(-dz + offset, horizontal) > chi_plain);
        CHECK(std::atan2(-dz - offset, horizontal) < chi_plain);
    }
}

TEST_CASE("position and attitude tracking bank toward the target") {
    const BodyState own = level_state(200.0);
    const BodyState opp = level_state(200.0, 0.0, {1500, 1500, -5000});  // ahead-right
    CHECK(run_maneuver(ManeuverId::PositionTracking, own, opp).phi_deg > 5.0);
    CHECK(run_maneuver(ManeuverId::AttitudeTracking, own, opp).phi_deg > 5.0);
}

TEST_CASE("attitude tracking uses euler angles, not path angles") {
    // Nose level but the flight path climbing ~10 deg toward a level target.
    BodyState climbing = level_state(200.0);
    climbing.vel_body = {196.0, 0.0, -34.7};
    const BodyState opp = level_state(200.0, 0.0, {3000, 0, -5000});
    const Setpoints sp_att = run_maneuver(ManeuverId::AttitudeTracking, climbing, opp);
    const Setpoints sp_pos = run_maneuver(ManeuverId::PositionTracking, climbing, opp);
    // The attitude tracker sees theta already on the line of sight and holds
    // a gentle wings-level pull; the position tracker must force the climbing
    // path back down, which at this error means an inverted hard pull.
    CHECK(std::abs(sp_att.phi_deg) < 1.0);
    CHECK(std::abs(sp_pos.phi_deg) > 90.0);
    CHECK(sp_pos.alpha_deg > sp_att.alpha_deg);
}

TEST_CASE("setpoints stay inside bounds for fuzzed states") {
    Rng rng(31);
    ManeuverContext ctx;
    for (int i = 0; i < 3000; ++i) {
        BodyState own;
        own.pos = {rng.uniform(-5000, 5000), rng.uniform(-5000, 5000),
                   rng.uniform(-9000, -200)};
        own.vel_body = {rng.uniform(60, 350), rng.uniform(-50, 50), rng.uniform(-80, 80)};
        own.euler = {rng.uniform(-kPi, kPi), rng.uniform(-1.5, 1.5), rng.uniform(-kPi, kPi)};
        BodyState opp = own;
        opp.pos += Vec3{rng.uniform(-6000, 6000), rng.uniform(-6000, 6000),
                        rng.uniform(-2000, 2000)};
        if ((opp.pos - own.pos).norm() < 2.0) continue;
        const ManeuverId id = static_cast<ManeuverId>(rng.uniform_int(8));
        const AirData air = air_data(own.vel_body, own.altitude());
        auto [sp, next] = maneuver_setpoints(id, own, air, opp, ctx, kParams);
        ctx = next;
        CHECK(sp.alpha_deg >= kParams.alpha_min_deg);
        CHECK(sp.alpha_deg <= kParams.alpha_full_max_deg);
        CHECK(sp.phi_deg >= -180.0);
        CHECK(sp.phi_deg < 180.0);
    }
}

TEST_CASE("maneuver context resets when the selected maneuver changes") {
    BodyState own = level_state(200.0);
    own.euler.x = kPi - 0.05;  // near inverted: split-s goes straight to the pull
    ManeuverContext ctx;
    const BodyState opp = level_state(200.0, 0.0, {4000, 0, -5000});
    run_maneuver(ManeuverId::SplitS, own, opp, &ctx);
    CHECK(ctx.active == ManeuverId::SplitS);
    CHECK(ctx.phase == SplitSPhase::Pull);
    run_maneuver(ManeuverId::Climb, own, opp, &ctx);
    CHECK(ctx.active == ManeuverId::Climb);
    run_maneuver(ManeuverId::SplitS, own, opp, &ctx);
    CHECK(ctx.phase == SplitSPhase::Pull);  // re-armed, not stuck in Recover
}

TEST_CASE("3-dof model: analytic single-step rates") {
    Simple3DofState s;
    s.pos = {0, 0, -5000};
    s.speed = 200.0;
    s.chi = 0.3;
    Simple3DofState next = simple_3dof_step(s, std::sin(s.chi), 1.0, 0.0, 0.01);
    CHECK(next.speed == doctest::Approx(200.0));  // n_l = sin(chi) holds speed
    next = simple_3dof_step(s, 0.0, std::cos(s.chi), 0.0, 0.01);
    CHECK(next.chi == doctest::Approx(s.chi));  // n_n = cos(chi) holds path pitch
    s.chi = 0.0;
    next = simple_3dof_step(s, 0.0, 2.0, 60.0 * kDegToRad, 0.01);
    CHECK((next.zeta - s.zeta) / 0.01 ==
          doctest::Approx(9.81 * 2.0 * std::sin(60.0 * kDegToRad) / 200.0));
}

TEST_CASE("3-dof oracle: the tracking pipeline aligns velocity with the line of sight") {
    Rng rng(101);
    const Vec3 target{0.0, 0.0, -5000.0};
    int converged = 0;
    const int trials = 20;
    for (int trial = 0; trial < trials; ++trial) {
        Simple3DofState s;
        s.pos = {rng.uniform(-8000, 8000), rng.uniform(-8000, 8000),
                 rng.uniform(-8000, -2000)};
        if ((target - s.pos).norm() < 1500.0) s.pos.x += 4000.0;
        s.speed = rng.uniform(150, 300);
        s.chi = rng.uniform(-0.5, 0.5);
        s.zeta = rng.uniform(-kPi, kPi);
        double t_align = -1.0;
        for (int i = 0; i < 6000; ++i) {
            const auto [chi_d, zeta_d] = desired_path_angles(s.pos, target);
            const auto [n2, n3] = loads_from_angle_errors(
                s.speed, s.chi, wrap_pi(chi_d - s.chi) * kRadToDeg,
                wrap_pi(zeta_d - s.zeta) * kRadToDeg, kParams);
            const auto [phi, n_n] = bank_and_load(n2, n3, kParams);
            s = simple_3dof_step(s, std::sin(s.chi), n_n, phi, 0.01);
            const Vec3 vel{s.speed * std::cos(s.chi) * std::cos(s.zeta),
                           s.speed * std::cos(s.chi) * std::sin(s.zeta),
                           -s.speed * std::sin(s.chi)};
            const Vec3 los = target - s.pos;
            if (los.norm() < 200.0) break;  // flew onto the target
            const double angle =
                std::acos(std::clamp(vel.dot(los) / (vel.norm() * los.norm()), -1.0, 1.0));
            if (angle < 5.0 * kDegToRad) {
                t_align = i * 0.01;
                break;
            }
        }
        if (t_align >= 0.0 && t_align <= 60.0) ++converged;
    }
    CHECK(converged >= 18);
}

TEST_CASE("6-dof: position tracking converges on a straight-flying opponent") {
    const TrimResult own_trim = trim_search(5000.0, 0.6, f16());
    const TrimResult opp_trim = trim_search(5000.0, 0.5, f16());
    BodyState own = own_trim.state;
    BodyState opp = opp_trim.state;
    // 2 km out on the opponent's astern quarter, both heading north.
    opp.pos = {2000.0 * std::cos(0.6), 2000.0 * std::sin(0.6), -5000.0};
    ControllerBank own_bank = ControllerBank::defaults(f16().config.limits);
    ControllerBank opp_bank = ControllerBank::defaults(f16().config.limits);
    ManeuverContext own_ctx, opp_ctx;
    double t_converged = -1.0;
    for (int i = 0; i < 3000 && t_converged < 0.0; ++i) {
        const AirData own_air = air_data(own.vel_body, own.altitude());
        const AirData opp_air = air_data(opp.vel_body, opp.altitude());
        auto [own_sp, c1] = maneuver_setpoints(ManeuverId::PositionTracking, own, own_air,
                                               opp, own_ctx, kParams);
        auto [opp_sp, c2] = maneuver_setpoints(ManeuverId::StraightFlight, opp, opp_air, own,
                                               opp_ctx, kParams);
        own_ctx = c1;
        opp_ctx = c2;
        own = step(own, control_law(own, own_air, own_sp, own_bank, 0.01), 0.01, f16());
        opp = step(opp, control_law(opp, opp_air, opp_sp, opp_bank, 0.01), 0.01, f16());
        if (relative_geometry(own, opp).ata_deg < 10.0) t_converged = i * 0.01;
    }
    CHECK(t_converged >= 0.0);
    CHECK(t_converged < 30.0);
}

TEST_CASE("6-dof: split-s dives through the pull and flips heading") {
    const TrimResult trim = trim_search(5000.0, 0.6, f16());
    BodyState s = trim.state;
    ControllerBank bank = ControllerBank::defaults(f16().config.limits);
    ManeuverContext ctx;
    const BodyState opp = level_state(200.0, 0.0, {10000, 0, -5000});
    double min_theta = 1e9;
    bool entered_pull = false, recovered = false;
    double pull_prev_alt = 0.0;
    for (int i = 0; i < 4000; ++i) {
        const AirData air = air_data(s.vel_body, s.altitude());
        auto [sp, next] = maneuver_setpoints(ManeuverId::SplitS, s, air, opp, ctx, kParams);
        const bool in_pull = next.phase == SplitSPhase::Pull;
        if (in_pull && !entered_pull) {
            entered_pull = true;
            pull_prev_alt = s.altitude();
        }
        ctx = next;
        s = step(s, control_law(s, air, sp, bank, 0.01), 0.01, f16());
        if (in_pull) {
            min_theta = std::min(min_theta, s.euler.y);
            if (s.euler.y < -5.0 * kDegToRad) {
                CHECK(s.altitude() <= pull_prev_alt + 0.5);  // nonincreasing while diving
            }
            pull_prev_alt = s.altitude();
        }
        if (ctx.phase == SplitSPhase::Recover) {
            recovered = true;
            break;
        }
    }
    CHECK(entered_pull);
    CHECK(recovered);
    CHECK(min_theta < -45.0 * kDegToRad);
    CHECK(std::abs(wrap_pi(s.euler.z - trim.state.euler.z)) > 150.0 * kDegToRad);
    CHECK(s.altitude() < 5000.0);
}

TEST_CASE("6-dof: somersault loops through the vertical") {
    const TrimResult trim = trim_search(5000.0, 0.6, f16());
    BodyState s = trim.state;
    ControllerBank bank = ControllerBank::defaults(f16().config.limits);
    ManeuverContext ctx;
    const BodyState opp = level_state(200.0, 0.0, {10000, 0, -5000});
    double max_theta = -1e9;
    bool reached_inverted = false;
    for (int i = 0; i < 3000; ++i) {
        const AirData air = air_data(s.vel_body, s.altitude());
        auto [sp, next] = maneuver_setpoints(ManeuverId::Somersault, s, air, opp, ctx, kParams);
        ctx = next;
        s = step(s, control_law(s, air, sp, bank, 0.01), 0.01, f16());
        max_theta = std::max(max_theta, s.euler.y);
        if (std::abs(s.euler.x) > 135.0 * kDegToRad) reached_inverted = true;
    }
    CHECK(max_theta > 85.0 * kDegToRad);
    CHECK(reached_inverted);
}

TEST_CASE("3-dof step: singular at vertical path") {
    Simple3DofState s;
    s.speed = 200.0;
    s.chi = kPi / 2.0;
    CHECK_THROWS_AS(simple_3dof_step(s, 0.0, 1.0, 0.0, 0.01), SingularAttitudeError);
}
