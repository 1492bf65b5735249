#include "dogfight/atmosphere.hpp"

#include <algorithm>
#include <cmath>

namespace dogfight::atmosphere {

namespace {
constexpr double kSeaLevelTemp = 288.15;     // K
constexpr double kSeaLevelPressure = 101325.0;  // Pa
constexpr double kLapseRate = 0.0065;        // K/m
constexpr double kGasConstant = 287.05287;   // J/(kg K)
constexpr double kGamma = 1.4;
constexpr double kG0 = 9.80665;              // ISA standard gravity
constexpr double kTropopause = 11000.0;      // m
constexpr double kMaxAltitude = 20000.0;     // m
constexpr double kTropopauseTemp = kSeaLevelTemp - kLapseRate * kTropopause;  // 216.65 K
}  // namespace

double temperature(double altitude_m) {
    const double h = std::clamp(altitude_m, 0.0, kMaxAltitude);
    if (h <= kTropopause) return kSeaLevelTemp - kLapseRate * h;
    return kTropopauseTemp;
}

double pressure(double altitude_m) {
    const double h = std::clamp(altitude_m, 0.0, kMaxAltitude);
    constexpr double exponent = kG0 / (kLapseRate * kGasConstant);
    if (h <= kTropopause) {
        return kSeaLevelPressure * std::pow(temperature(h) / kSeaLevelTemp, exponent);
    }
    const double p_tropo =
        kSeaLevelPressure * std::pow(kTropopauseTemp / kSeaLevelTemp, exponent);
    return p_tropo * std::exp(-kG0 * (h - kTropopause) / (kGasConstant * kTropopauseTemp));
}

double density(double altitude_m) {
    return pressure(altitude_m) / (kGasConstant * temperature(altitude_m));
}

double speed_of_sound(double altitude_m) {
    return std::sqrt(kGamma * kGasConstant * temperature(altitude_m));
}

}  // namespace dogfight::atmosphere
