#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "dogfight/airframe.hpp"
#include "dogfight/dt_policy.hpp"
#include "dogfight/engagement.hpp"
#include "dogfight/lowlevel.hpp"
#include "dogfight/maneuvers.hpp"
#include "dogfight/rng.hpp"

namespace dogfight {

class TrajectoryWriter;

// The 12-component observation: depth, speed, roll, pitch, path pitch, two
// line-of-sight-relative yaw terms, HCA, ATA, AA, distance, opponent speed.
using Observation = std::array<double, 12>;
constexpr int kObservationSize = 12;

// Scales dividing each raw quantity. Values are typical magnitudes, not hard
// bounds; components may exceed [-1, 1] (e.g. distance past 10 km).
struct ObsNormalization {
    double depth_m = 10000.0;   // p3
    double speed_ms = 400.0;    // V and opponent V
    double angle_deg = 180.0;   // every angle component
    double distance_m = 10000.0;
};

struct RewardWeights {
    double failure = 20.0;
    double damage = 1.0;
    double angle = 1.0 / 180.0;
};

struct InitRanges {
    double p1_min = -3000.0, p1_max = 3000.0;
    double p2_min = -3000.0, p2_max = 3000.0;
    double p3_min = -8000.0, p3_max = -3000.0;  // altitude 3..8 km
    double mach_min = 0.3, mach_max = 0.9;
    double yaw_min_deg = -180.0, yaw_max_deg = 180.0;
};

// Fixed initial conditions for scripted duels.
struct ScriptedInit {
    Vec3 blue_pos;
    Vec3 red_pos;
    double blue_yaw_deg = 0.0;
    double red_yaw_deg = 0.0;
    double blue_mach = 0.9;
    double red_mach = 0.9;
};

struct EpisodeConfig {
    double dt = 0.01;            // physics substep, s
    int substeps = 100;          // substeps per decision period (1 s)
    int max_decision_steps = 300;
    InitRanges init;
    DtOptions red_options = DtOptions::strategy(8);
    DtParams dt_params;
    GuidanceParams guidance;
    EngagementZone zone;
    TerminationRules termination;  // max_decision_steps is kept in sync
    ObsNormalization normalization;
    RewardWeights reward;
    // Gains/targets for both aircraft; defaults from the airframe's actuator
    // limits when unset.
    std::optional<ControllerBank> controllers;
};

struct StepInfo {
    double blue_blood = 1.0;
    double red_blood = 1.0;
    ManeuverId blue_maneuver = ManeuverId::PositionTracking;
    ManeuverId red_maneuver = ManeuverId::PositionTracking;
    int substeps = 0;
    long aero_clamps = 0;  // table lookups clamped to the grid edge
};

struct StepResult {
    Observation obs{};
    double reward = 0.0;
    bool done = false;
    Outcome outcome = Outcome::Ongoing;
    StepInfo info;
};

Observation observe(const BodyState& blue, const BodyState& red, const ObsNormalization& norm);

double reward(double prev_blue_blood, double prev_red_blood, double blue_blood, double red_blood,
              const RelativeGeometry& geom_from_blue, Outcome outcome, const RewardWeights& w);

// One 1v1 episode driver: the caller picks blue's maneuver each decision
// period, the decision-tree opponent picks red's, and the physics advances
// through `substeps` control substeps (maneuver -> control -> airframe ->
// damage -> termination each substep). Strictly sequential; run one instance
// per thread with its own seed for parallel rollouts.
class DogfightEnv {
 public:
    DogfightEnv(const Airframe& airframe, EpisodeConfig config, std::uint64_t seed);

    Observation reset();
    Observation reset(const ScriptedInit& init);

    // Throws ContractViolation when called on a finished episode.
    StepResult step(ManeuverId blue_action);

    bool done() const { return done_; }
    Outcome outcome() const { return outcome_; }
    int decision_steps() const { return decision_steps_; }
    const EpisodeConfig& config() const { return config_; }

    const BodyState& blue_state() const { return blue_.state; }
    const BodyState& red_state() const { return red_.state; }
    const CombatStatus& blue_status() const { return blue_.status; }
    const CombatStatus& red_status() const { return red_.status; }

    // When set, one row per aircraft is appended every substep.
    void attach_trajectory(TrajectoryWriter* writer) { trajectory_ = writer; }

 private:
    struct Aircraft {
        BodyState state;
        AirData air;
        ControllerBank bank;
        ManeuverContext context;
        CombatStatus status;
    };

    void init_aircraft(Aircraft& aircraft, const Vec3& pos, double yaw_deg, double mach);
    void log_substep(double time_s, const Aircraft& aircraft, const char* side,
                     ManeuverId maneuver, const RelativeGeometry& geom);

    const Airframe* airframe_;
    EpisodeConfig config_;
    Rng rng_;
    Aircraft blue_;
    Aircraft red_;
    int decision_steps_ = 0;
    bool done_ = true;  // must reset() before stepping
    Outcome outcome_ = Outcome::Ongoing;
    TrajectoryWriter* trajectory_ = nullptr;
};

}  // namespace dogfight
