#include "dogfight/engagement.hpp"

#include <algorithm>
#include <cmath>

#include "dogfight/error.hpp"

namespace dogfight {

std::string_view outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Ongoing: return "ongoing";
        case Outcome::BlueWin: return "win";
        case Outcome::RedWin: return "loss";
        case Outcome::Tie: return "tie";
    }
    return "?";
}

Vec3 heading_vector(const Vec3& euler) {
    const double cth = std::cos(euler.y);
    return {cth * std::cos(euler.z), cth * std::sin(euler.z), -std::sin(euler.y)};
}

namespace {
double clamped_acos_deg(double x) { return std::acos(std::clamp(x, -1.0, 1.0)) * kRadToDeg; }
}  // namespace

RelativeGeometry relative_geometry(const BodyState& own, const BodyState& opp) {
    RelativeGeometry g;
    g.los = opp.pos - own.pos;
    g.distance = g.los.norm();
    if (g.distance <= 0.0) throw CoincidentPositionError("engagement");
    const Vec3 h_own = heading_vector(own.euler);
    const Vec3 h_opp = heading_vector(opp.euler);
    g.hca_deg = clamped_acos_deg(h_own.dot(h_opp));
    g.ata_deg = clamped_acos_deg(g.los.dot(h_own) / g.distance);
    g.aa_deg = clamped_acos_deg(g.los.dot(h_opp) / g.distance);
    return g;
}

bool in_engagement_zone(const RelativeGeometry& geom, const EngagementZone& zone) {
    return geom.distance >= zone.d_min && geom.distance <= zone.d_max &&
           geom.ata_deg <= zone.ata_max_deg;
}

void apply_damage(CombatStatus& blue, CombatStatus& red, bool blue_under_fire,
                  bool red_under_fire, double dt) {
    if (blue_under_fire) blue.blood = std::max(0.0, blue.blood - dt);
    if (red_under_fire) red.blood = std::max(0.0, red.blood - dt);
}

namespace {
void apply_crash_rules(const BodyState& state, CombatStatus& status,
                       const TerminationRules& rules) {
    if (!status.crashed && state.altitude() < rules.min_altitude_m) {
        status.crashed = true;
        status.crash_reason = CrashReason::Ground;
    }
}
}  // namespace

Outcome check_termination(const BodyState& blue, const BodyState& red, CombatStatus& blue_status,
                          CombatStatus& red_status, const RelativeGeometry& geom,
                          int decision_steps, const TerminationRules& rules) {
    apply_crash_rules(blue, blue_status, rules);
    apply_crash_rules(red, red_status, rules);
    if (geom.distance < rules.min_separation_m) {
        for (CombatStatus* s : {&blue_status, &red_status}) {
            if (!s->crashed) {
                s->crashed = true;
                s->crash_reason = CrashReason::Proximity;
            }
        }
    }

    const bool blue_failed = blue_status.failed();
    const bool red_failed = red_status.failed();
    if (blue_failed && red_failed) return Outcome::Tie;
    if (red_failed) return Outcome::BlueWin;
    if (blue_failed) return Outcome::RedWin;
    if (decision_steps >= rules.max_decision_steps) return Outcome::Tie;
    return Outcome::Ongoing;
}

}  // namespace dogfight
