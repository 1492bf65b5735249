#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "dogfight/math.hpp"
#include "dogfight/table.hpp"

namespace dogfight {

struct ControlSurfaces {
    double throttle = 0.0;      // [0, 1]
    double elevator_deg = 0.0;  // positive = nose-up command
    double aileron_deg = 0.0;   // positive = roll-right command
    double rudder_deg = 0.0;
};

// Dimensionless coefficients in the subtracted-air-force convention:
// positive drag opposes forward motion, positive lift points up (-body z)
// once the force vector is subtracted from thrust.
struct AeroCoefficients {
    double drag = 0.0;
    double side = 0.0;
    double lift = 0.0;
    double roll = 0.0;
    double pitch = 0.0;
    double yaw = 0.0;
};

struct AeroDiagnostics {
    long clamped_lookups = 0;  // queries outside a table hull (clamped to edge)
};

// Table-driven coefficient build-up. The component tables come from CSV data
// files; the combination structure (control increments scaled by deflection,
// damping terms scaled by normalized body rates, cg transfer terms) is the
// standard fighter build-up and is fixed here. Immutable after load and safe
// to share across threads.
class AeroModel {
 public:
    static AeroModel load(const std::filesystem::path& dir);

    // alpha/beta in degrees, surface deflections in degrees, rates normalized:
    // phat = p*b/2V, qhat = q*cbar/2V, rhat = r*b/2V.
    AeroCoefficients coefficients(double alpha_deg, double beta_deg,
                                  const ControlSurfaces& surfaces, double phat, double qhat,
                                  double rhat, double xcg_ref_minus_xcg, double chord_over_span,
                                  AeroDiagnostics* diag = nullptr) const;

    const Table& table(const std::string& name) const;
    void set_table(const std::string& name, Table t);  // test hook

 private:
    std::map<std::string, Table> tables_;
};

}  // namespace dogfight
