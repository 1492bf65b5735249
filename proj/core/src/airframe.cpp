#include "dogfight/airframe.hpp"

#include <algorithm>
#include <cmath>

#include "dogfight/atmosphere.hpp"
#include "dogfight/error.hpp"

namespace dogfight {

double StateRates::norm_excluding_position() const {
    return std::sqrt(vel_rate.dot(vel_rate) + euler_rate.dot(euler_rate) +
                     omega_rate.dot(omega_rate));
}

Airframe load_airframe(const std::filesystem::path& data_dir) {
    Airframe a;
    a.aero = AeroModel::load(data_dir);
    a.engine = EngineModel::load(data_dir);
    return a;
}

Mat3 rotation_body_to_earth(const Vec3& e) {
    const double cphi = std::cos(e.x), sphi = std::sin(e.x);
    const double cth = std::cos(e.y), sth = std::sin(e.y);
    const double cpsi = std::cos(e.z), spsi = std::sin(e.z);
    Mat3 r;
    r(0, 0) = cth * cpsi;
    r(0, 1) = sphi * sth * cpsi - cphi * spsi;
    r(0, 2) = cphi * sth * cpsi + sphi * spsi;
    r(1, 0) = cth * spsi;
    r(1, 1) = sphi * sth * spsi + cphi * cpsi;
    r(1, 2) = cphi * sth * spsi - sphi * cpsi;
    r(2, 0) = -sth;
    r(2, 1) = sphi * cth;
    r(2, 2) = cphi * cth;
    return r;
}

Vec3 euler_rates(const Vec3& euler, const Vec3& omega) {
    const double cth = std::cos(euler.y);
    if (std::abs(cth) < 1e-6) throw SingularAttitudeError(cth);
    const double sphi = std::sin(euler.x), cphi = std::cos(euler.x);
    const double tth = std::tan(euler.y);
    const double p = omega.x, q = omega.y, r = omega.z;
    return {p + (q * sphi + r * cphi) * tth,
            q * cphi - r * sphi,
            (q * sphi + r * cphi) / cth};
}

AirData air_data(const Vec3& v, double altitude_m) {
    const double speed = v.norm();
    if (speed < 1e-9) throw ZeroVelocityError();
    AirData air;
    air.speed = speed;
    air.alpha_rad = std::atan2(v.z, v.x);
    air.beta_rad = std::asin(std::clamp(v.y / speed, -1.0, 1.0));
    air.mach = speed / atmosphere::speed_of_sound(altitude_m);
    air.qbar = 0.5 * atmosphere::density(altitude_m) * speed * speed;
    return air;
}

ForceTorque aero_forces_moments(const AirData& air, const ControlSurfaces& surfaces,
                                const Vec3& omega, const AircraftConfig& config,
                                const AeroModel& aero, AeroDiagnostics* diag) {
    const double alpha_deg = air.alpha_rad * kRadToDeg;
    const double beta_deg = air.beta_rad * kRadToDeg;
    const double two_v = 2.0 * std::max(air.speed, 1e-6);
    const double phat = omega.x * config.span_m / two_v;
    const double qhat = omega.y * config.chord_m / two_v;
    const double rhat = omega.z * config.span_m / two_v;

    const AeroCoefficients c = aero.coefficients(
        alpha_deg, beta_deg, surfaces, phat, qhat, rhat, config.xcg_ref - config.xcg,
        config.chord_m / config.span_m, diag);

    const double qs = air.qbar * config.wing_area_m2;
    ForceTorque ft;
    ft.force = {qs * c.drag, qs * c.side, qs * c.lift};
    ft.torque = {qs * config.span_m * c.roll, qs * config.chord_m * c.pitch,
                 qs * config.span_m * c.yaw};
    return ft;
}

double thrust(const EngineModel& engine, double throttle, double altitude_m, double mach) {
    return engine.thrust(throttle, altitude_m, mach);
}

StateRates derivatives(const BodyState& state, const Airframe& airframe, AeroDiagnostics* diag) {
    const AircraftConfig& cfg = airframe.config;
    const AirData air = air_data(state.vel_body, state.altitude());
    const ForceTorque aero = aero_forces_moments(air, state.surfaces, state.omega, cfg,
                                                 airframe.aero, diag);
    const double f_thrust =
        airframe.engine.thrust(state.surfaces.throttle, state.altitude(), air.mach);

    const Mat3 r_be = rotation_body_to_earth(state.euler);
    const Vec3 gravity_body = r_be.transpose() * Vec3{0.0, 0.0, cfg.gravity};

    StateRates rates;
    rates.pos_rate = r_be * state.vel_body;
    rates.vel_rate = (Vec3{f_thrust, 0.0, 0.0} - aero.force) / cfg.mass_kg + gravity_body -
                     state.omega.cross(state.vel_body);
    rates.euler_rate = euler_rates(state.euler, state.omega);
    rates.omega_rate =
        cfg.inertia.inverse() * (aero.torque - state.omega.cross(cfg.inertia * state.omega));
    return rates;
}

namespace {

double advance_channel(double current, double commanded, const ChannelLimit& lim, double dt) {
    const double target = std::clamp(commanded, lim.min, lim.max);
    const double max_delta = lim.rate * std::abs(dt);
    const double delta = std::clamp(target - current, -max_delta, max_delta);
    return std::clamp(current + delta, lim.min, lim.max);
}

// State vector used by the integrator: position, body velocity, attitude
// quaternion, angular rate. Surfaces are held fixed across the step.
struct IntegState {
    Vec3 pos, vel;
    Quat att;
    Vec3 omega;
};

struct IntegRates {
    Vec3 pos, vel;
    Quat att;
    Vec3 omega;
};

IntegRates eval_rates(const IntegState& s, const ControlSurfaces& surfaces,
                      const Airframe& airframe, AeroDiagnostics* diag) {
    BodyState body;
    body.pos = s.pos;
    body.vel_body = s.vel;
    body.euler = s.att.to_euler();
    body.omega = s.omega;
    body.surfaces = surfaces;

    const AircraftConfig& cfg = airframe.config;
    const AirData air = air_data(s.vel, -s.pos.z);
    const ForceTorque aero =
        aero_forces_moments(air, surfaces, s.omega, cfg, airframe.aero, diag);
    const double f_thrust = airframe.engine.thrust(surfaces.throttle, -s.pos.z, air.mach);

    const Mat3 r_be = rotation_body_to_earth(body.euler);
    IntegRates r;
    r.pos = r_be * s.vel;
    r.vel = (Vec3{f_thrust, 0.0, 0.0} - aero.force) / cfg.mass_kg +
            r_be.transpose() * Vec3{0.0, 0.0, cfg.gravity} - s.omega.cross(s.vel);
    r.att = s.att.derivative(s.omega);
    r.omega = cfg.inertia.inverse() * (aero.torque - s.omega.cross(cfg.inertia * s.omega));
    return r;
}

IntegState advance(const IntegState& s, const IntegRates& r, double h) {
    IntegState out;
    out.pos = s.pos + r.pos * h;
    out.vel = s.vel + r.vel * h;
    out.att = (s.att + r.att * h).normalized();
    out.omega = s.omega + r.omega * h;
    return out;
}

}  // namespace

BodyState step(const BodyState& state, const ControlSurfaces& commanded, double dt,
               const Airframe& airframe, AeroDiagnostics* diag) {
    if (dt == 0.0) return state;

    const ActuatorLimits& lim = airframe.config.limits;
    ControlSurfaces surf;
    surf.throttle = advance_channel(state.surfaces.throttle, commanded.throttle, lim.throttle, dt);
    surf.elevator_deg =
        advance_channel(state.surfaces.elevator_deg, commanded.elevator_deg, lim.elevator, dt);
    surf.aileron_deg =
        advance_channel(state.surfaces.aileron_deg, commanded.aileron_deg, lim.aileron, dt);
    surf.rudder_deg =
        advance_channel(state.surfaces.rudder_deg, commanded.rudder_deg, lim.rudder, dt);

    IntegState s0{state.pos, state.vel_body, Quat::from_euler(state.euler), state.omega};
    const IntegRates k1 = eval_rates(s0, surf, airframe, diag);
    const IntegRates k2 = eval_rates(advance(s0, k1, 0.5 * dt), surf, airframe, diag);
    const IntegRates k3 = eval_rates(advance(s0, k2, 0.5 * dt), surf, airframe, diag);
    const IntegRates k4 = eval_rates(advance(s0, k3, dt), surf, airframe, diag);

    const auto blend = [dt](const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
        return (a + 2.0 * b + 2.0 * c + d) * (dt / 6.0);
    };
    IntegState s1;
    s1.pos = s0.pos + blend(k1.pos, k2.pos, k3.pos, k4.pos);
    s1.vel = s0.vel + blend(k1.vel, k2.vel, k3.vel, k4.vel);
    s1.att = (s0.att + (k1.att + k2.att * 2.0 + k3.att * 2.0 + k4.att) * (dt / 6.0)).normalized();
    s1.omega = s0.omega + blend(k1.omega, k2.omega, k3.omega, k4.omega);

    BodyState out;
    out.pos = s1.pos;
    out.vel_body = s1.vel;
    out.euler = s1.att.to_euler();
    out.euler.x = wrap_pi(out.euler.x);
    out.euler.z = wrap_pi(out.euler.z);
    out.omega = s1.omega;
    out.surfaces = surf;
    if (!out.finite()) throw NonFiniteStateError("integration step");
    return out;
}

TrimResult trim_search(double altitude_m, double mach, const Airframe& airframe) {
    const double speed = mach * atmosphere::speed_of_sound(altitude_m);

    // Straight and level: unknowns are alpha, throttle, elevator; pitch
    // equals alpha so the flight path is horizontal. Lateral states are zero
    // by symmetry, leaving residuals (udot, wdot, qdot).
    const auto make_state = [&](double alpha, double throttle, double elevator) {
        BodyState s;
        s.pos = {0.0, 0.0, -altitude_m};
        s.vel_body = {speed * std::cos(alpha), 0.0, speed * std::sin(alpha)};
        s.euler = {0.0, alpha, 0.0};
        s.omega = {0.0, 0.0, 0.0};
        s.surfaces = {throttle, elevator, 0.0, 0.0};
        return s;
    };

    const auto residual_vec = [&](const double x[3], double out[3]) {
        const BodyState s = make_state(x[0], x[1], x[2]);
        const StateRates r = derivatives(s, airframe);
        out[0] = r.vel_rate.x;
        out[1] = r.vel_rate.z;
        out[2] = r.omega_rate.y;
    };

    double x[3] = {2.0 * kDegToRad, 0.4, 0.0};
    const ActuatorLimits& lim = airframe.config.limits;
    const auto clamp_x = [&](double v[3]) {
        v[0] = std::clamp(v[0], -10.0 * kDegToRad, 40.0 * kDegToRad);
        v[1] = std::clamp(v[1], lim.throttle.min, lim.throttle.max);
        v[2] = std::clamp(v[2], lim.elevator.min, lim.elevator.max);
    };

    double f[3];
    residual_vec(x, f);
    double best = std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2]);

    // Damped Newton with a finite-difference Jacobian.
    for (int iter = 0; iter < 80 && best > 1e-9; ++iter) {
        Mat3 jac;
        const double h[3] = {1e-6, 1e-6, 1e-5};
        for (int j = 0; j < 3; ++j) {
            double xp[3] = {x[0], x[1], x[2]};
            double xm[3] = {x[0], x[1], x[2]};
            xp[j] += h[j];
            xm[j] -= h[j];
            double fp[3], fm[3];
            residual_vec(xp, fp);
            residual_vec(xm, fm);
            for (int i = 0; i < 3; ++i) jac(i, j) = (fp[i] - fm[i]) / (2.0 * h[j]);
        }
        Vec3 dx;
        if (std::abs(jac.determinant()) < 1e-12) break;
        dx = jac.inverse() * Vec3{f[0], f[1], f[2]};

        double lambda = 1.0;
        bool improved = false;
        for (int ls = 0; ls < 12; ++ls, lambda *= 0.5) {
            double xt[3] = {x[0] - lambda * dx.x, x[1] - lambda * dx.y, x[2] - lambda * dx.z};
            clamp_x(xt);
            double ft[3];
            residual_vec(xt, ft);
            const double nt = std::sqrt(ft[0] * ft[0] + ft[1] * ft[1] + ft[2] * ft[2]);
            if (nt < best) {
                std::copy(xt, xt + 3, x);
                std::copy(ft, ft + 3, f);
                best = nt;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }

    if (best > 1e-3) throw NoConvergenceError("airframe", best);

    TrimResult trim;
    trim.state = make_state(x[0], x[1], x[2]);
    trim.controls = trim.state.surfaces;
    trim.residual = derivatives(trim.state, airframe).norm_excluding_position();
    return trim;
}

}  // namespace dogfight
