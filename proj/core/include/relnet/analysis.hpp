#pragma once

#include <optional>
#include <vector>

#include "relnet/geometry.hpp"

namespace relnet {

struct RadialProfile {
    std::vector<double> radii;
    std::vector<double> intensity; // estimated density per unit area
};

/// Silverman's rule-of-thumb bandwidth on the raw radii.
double silverman_bandwidth(std::vector<double> radii);

/// Kernel density estimate of a spatial intensity as a function of the
/// radius. Each observation at radius s carries weight w/(2 pi max(s, r/100))
/// (the area weight, clamped near the origin), observations are mirrored at 0
/// and at r before Gaussian smoothing, and the result integrates against
/// 2 pi s ds to roughly the total input weight.
RadialProfile kde_radial(const std::vector<double>& radii, const std::vector<double>& weights,
                         double r, std::optional<double> bandwidth = std::nullopt,
                         std::size_t grid_points = 256);

/// Angle of the centroid; nullopt when the centroid degenerates to the
/// origin (relative tolerance on the centroid norm).
std::optional<double> cluster_angle(const std::vector<Vec2>& points);

struct CircularStats {
    std::size_t n = 0;
    double mean_angle = 0.0;
    double resultant = 0.0;      // mean resultant length in [0, 1]
    double circ_variance = 1.0;  // 1 - resultant
};

CircularStats circular_stats(const std::vector<double>& angles);

/// Rayleigh test p-value for uniformity of angles (standard series
/// approximation); small p means significant concentration.
double rayleigh_pvalue(const std::vector<double>& angles);

} // namespace relnet
