#include "dogfight/trajectory.hpp"

#include <json.hpp>

#include "dogfight/error.hpp"

namespace dogfight {

TrajectoryWriter::TrajectoryWriter(const std::filesystem::path& file) : out_(file) {
    if (!out_) throw DataError("trajectory", "cannot open '" + file.string() + "'");
    out_ << "t,side,p1,p2,p3,phi,theta,psi,V,Ma,alpha,beta,blood,maneuver_id,d,ATA,AA,HCA\n";
}

void TrajectoryWriter::row(double t, const char* side, const BodyState& s, const AirData& air,
                           double blood, ManeuverId maneuver, const RelativeGeometry& geom) {
    out_ << t << ',' << side << ',' << s.pos.x << ',' << s.pos.y << ',' << s.pos.z << ','
         << s.euler.x * kRadToDeg << ',' << s.euler.y * kRadToDeg << ',' << s.euler.z * kRadToDeg
         << ',' << air.speed << ',' << air.mach << ',' << air.alpha_rad * kRadToDeg << ','
         << air.beta_rad * kRadToDeg << ',' << blood << ',' << static_cast<int>(maneuver) << ','
         << geom.distance << ',' << geom.ata_deg << ',' << geom.aa_deg << ',' << geom.hca_deg
         << '\n';
}

void write_episode_summary(const std::filesystem::path& file, const EpisodeSummary& summary) {
    nlohmann::json j;
    j["outcome"] = std::string(outcome_name(summary.outcome));
    j["steps"] = summary.decision_steps;
    j["final_blood"] = {{"blue", summary.blue_blood}, {"red", summary.red_blood}};
    j["seed"] = summary.seed;
    std::ofstream out(file);
    if (!out) throw DataError("trajectory", "cannot open '" + file.string() + "'");
    out << j.dump(2) << '\n';
}

}  // namespace dogfight
