#pragma once

#include <cmath>
#include <stdexcept>

namespace nbl {

inline constexpr double kBoltzmann = 1.380649e-23; // J/K

/// Minimum energy dissipated per bit operation at error probability
/// epsilon and temperature T: k_B * T * ln(1/epsilon).
inline double dissipation_bound(double temperature_kelvin, double epsilon) {
    if (!(temperature_kelvin >= 0.0))
        throw std::invalid_argument("dissipation_bound: temperature must be >= 0");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("dissipation_bound: epsilon must be in (0, 1)");
    return kBoltzmann * temperature_kelvin * std::log(1.0 / epsilon);
}

} // namespace nbl
