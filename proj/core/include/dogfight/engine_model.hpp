#pragma once

#include <filesystem>

#include "dogfight/table.hpp"

namespace dogfight {

// Throttle -> thrust via the idle/mil/max deck. Throttle maps to a power
// level (afterburner engages above 0.77); spool dynamics are approximated by
// the airframe's throttle rate limit rather than a separate power-lag state.
class EngineModel {
 public:
    static EngineModel load(const std::filesystem::path& dir);
    static EngineModel from_tables(Table idle, Table mil, Table max);

    // Nonnegative thrust in N, monotone nondecreasing in throttle.
    double thrust(double throttle, double altitude_m, double mach) const;

    static double power_command(double throttle);  // [0, 100]

    const Table& idle() const { return idle_; }
    const Table& mil() const { return mil_; }
    const Table& max() const { return max_; }

 private:
    Table idle_, mil_, max_;
};

}  // namespace dogfight
