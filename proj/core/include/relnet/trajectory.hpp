#pragma once

#include <cstdint>
#include <vector>

#include "relnet/geometry.hpp"
#include "relnet/rng.hpp"

namespace relnet {

/// Piecewise-linear trajectory on [0, T), stored as (time, position) knots.
/// Knot times are strictly increasing, first knot at t = 0, last at t >= T.
class Trajectory {
public:
    Trajectory(std::vector<double> times, std::vector<Vec2> positions, double horizon);

    static Trajectory constant(Vec2 p, double horizon);

    Vec2 at(double t) const;
    double horizon() const { return horizon_; }
    std::size_t knots() const { return times_.size(); }
    const std::vector<double>& knot_times() const { return times_; }
    const std::vector<Vec2>& knot_positions() const { return positions_; }

private:
    std::vector<double> times_;
    std::vector<Vec2> positions_;
    double horizon_;
};

/// Random-waypoint mobility: straight legs at constant speed toward uniform
/// waypoints in the window, with an optional pause at each waypoint.
struct MobilityModel {
    enum class Kind { Static, RandomWaypoint };
    Kind kind = Kind::Static;
    double speed = 0.0; // Lipschitz bound J1 of every sampled trajectory
    double pause = 0.0;
};

Trajectory sample_rwp(Vec2 start, const Window& w, double speed, double pause, double horizon,
                      SplitMix64& rng);

/// Deterministic per seed. Static models give the constant trajectory.
Trajectory sample_trajectory(const MobilityModel& model, const Window& w, double horizon,
                             Vec2 start, std::uint64_t seed);

/// Weighted finite collection of trajectories, used as an atomic measure on
/// path space.
struct WeightedTrajectories {
    std::vector<Trajectory> paths;
    std::vector<double> weights;

    double total() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }
};

/// Users sampled as trajectories, carrying the intensity scale.
struct TrajectoryConfig {
    std::vector<Trajectory> users;
    double lambda = 1.0;
};

} // namespace relnet
