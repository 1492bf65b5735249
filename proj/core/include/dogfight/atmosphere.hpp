#pragma once

namespace dogfight {

// International Standard Atmosphere, troposphere plus the isothermal layer
// up to 20 km. Altitudes are clamped to [0, 20000] m.
namespace atmosphere {

double temperature(double altitude_m);     // K
double pressure(double altitude_m);        // Pa
double density(double altitude_m);         // kg/m^3
double speed_of_sound(double altitude_m);  // m/s

}  // namespace atmosphere

}  // namespace dogfight
