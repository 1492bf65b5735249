#pragma once

#include <string_view>

#include "dogfight/airframe.hpp"

namespace dogfight {

// Geometry between two aircraft: distance, heading crossing angle, antenna
// train angle (own nose off the line of sight) and aspect angle (opponent
// nose off the line of sight).
struct RelativeGeometry {
    Vec3 los;            // opponent position - own position, m
    double distance = 0.0;
    double hca_deg = 0.0;
    double ata_deg = 0.0;
    double aa_deg = 0.0;
};

struct EngagementZone {
    double d_min = 100.0;    // m
    double d_max = 1000.0;   // m
    double ata_max_deg = 1.0;
};

enum class CrashReason { None, Ground, Proximity, NonFinite };

struct CombatStatus {
    double blood = 1.0;  // drains at 1/s while inside the opponent's zone
    bool crashed = false;
    CrashReason crash_reason = CrashReason::None;

    bool failed() const { return crashed || blood <= 0.0; }
};

enum class Outcome { Ongoing, BlueWin, RedWin, Tie };

std::string_view outcome_name(Outcome o);

// Nose direction (body x-axis) in the earth frame.
Vec3 heading_vector(const Vec3& euler);

// Throws CoincidentPositionError when the positions coincide.
RelativeGeometry relative_geometry(const BodyState& own, const BodyState& opp);

bool in_engagement_zone(const RelativeGeometry& geom, const EngagementZone& zone = {});

// Constant-rate damage: an aircraft under fire loses dt blood per substep
// (1 blood per second). Both sides may take damage in the same substep.
void apply_damage(CombatStatus& blue, CombatStatus& red, bool blue_under_fire,
                  bool red_under_fire, double dt);

struct TerminationRules {
    double min_altitude_m = 10.0;
    double min_separation_m = 10.0;
    int max_decision_steps = 300;
};

// Applies the failure rules (blood exhausted, ground, proximity) to both
// statuses and derives the episode outcome. Proximity fails both aircraft.
Outcome check_termination(const BodyState& blue, const BodyState& red, CombatStatus& blue_status,
                          CombatStatus& red_status, const RelativeGeometry& geometry_from_blue,
                          int decision_steps, const TerminationRules& rules = {});

}  // namespace dogfight
