#include "dogfight/engine_model.hpp"

#include <algorithm>

namespace dogfight {

EngineModel EngineModel::load(const std::filesystem::path& dir) {
    EngineModel e;
    e.idle_ = Table::load_csv(dir / "engine_idle.csv");
    e.mil_ = Table::load_csv(dir / "engine_mil.csv");
    e.max_ = Table::load_csv(dir / "engine_max.csv");
    return e;
}

EngineModel EngineModel::from_tables(Table idle, Table mil, Table max) {
    EngineModel e;
    e.idle_ = std::move(idle);
    e.mil_ = std::move(mil);
    e.max_ = std::move(max);
    return e;
}

double EngineModel::power_command(double throttle) {
    const double t = std::clamp(throttle, 0.0, 1.0);
    return t <= 0.77 ? 64.94 * t : 217.38 * t - 117.38;
}

double EngineModel::thrust(double throttle, double altitude_m, double mach) const {
    const double pow = power_command(throttle);
    const double t_mil = mil_.at2(altitude_m, mach);
    double t;
    if (pow < 50.0) {
        const double t_idle = idle_.at2(altitude_m, mach);
        t = t_idle + (t_mil - t_idle) * pow * 0.02;
    } else {
        const double t_max = max_.at2(altitude_m, mach);
        t = t_mil + (t_max - t_mil) * (pow - 50.0) * 0.02;
    }
    return std::max(t, 0.0);  // idle entries can be ram drag; net thrust is floored
}

}  // namespace dogfight
