#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>

#include "dogfight/engagement.hpp"
#include "dogfight/maneuver_types.hpp"

namespace dogfight {

// Streams one CSV row per aircraft per substep. Angles are written in
// degrees, distances in meters, time in seconds.
class TrajectoryWriter {
 public:
    explicit TrajectoryWriter(const std::filesystem::path& file);

    void row(double t, const char* side, const BodyState& state, const AirData& air, double blood,
             ManeuverId maneuver, const RelativeGeometry& geom);

 private:
    std::ofstream out_;
};

// Episode summary (outcome from blue's perspective) as a JSON record.
struct EpisodeSummary {
    Outcome outcome = Outcome::Ongoing;
    int decision_steps = 0;
    double blue_blood = 1.0;
    double red_blood = 1.0;
    std::uint64_t seed = 0;
};

void write_episode_summary(const std::filesystem::path& file, const EpisodeSummary& summary);

}  // namespace dogfight
