#include "relnet/rng.hpp"

#include <cmath>
#include <numbers>

namespace relnet {

double SplitMix64::normal() {
    // Box-Muller; u clamped away from 0 so log stays finite.
    double u = uniform01();
    if (u < 0x1.0p-60) u = 0x1.0p-60;
    double v = uniform01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

} // namespace relnet
