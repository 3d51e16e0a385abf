#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "relnet/grid.hpp"
#include "relnet/model.hpp"

namespace relnet {

/// Per-channel frustration parameters: time budget a, QoS threshold c, and
/// an optional mass threshold b (absent = channel unconstrained by events).
struct ChannelSpec {
    bool enabled = false;
    double a = 0.0;
    double c = 0.0;
    std::optional<double> b;
};

struct FrustrationSpec {
    std::array<ChannelSpec, 4> ch; // indexed by Channel
    ThresholdScale scale = ThresholdScale::Qos;

    std::array<bool, 4> needed() const {
        return {ch[0].enabled, ch[1].enabled, ch[2].enabled, ch[3].enabled};
    }
    bool any_event_channel() const {
        for (const auto& c : ch)
            if (c.enabled && c.b) return true;
        return false;
    }
};

/// 1 iff the time spent strictly below c exceeds a (strict on both sides).
int tau_ac(std::span<const double> gamma, double a, double c, double dt);

/// QoS trajectory of one user along the time grid: channel value per
/// instant, against a configuration of trajectories or a path measure.
std::vector<double> qos_path(const Model& model, const Trajectory& x, const TrajectoryConfig& cfg,
                             const TimeGrid& time, Channel kind);
std::vector<double> qos_path(const Model& model, const Trajectory& x, const PathMeasure& nu,
                             Channel kind);

/// The four rescaled measures of frustrated users on the path grid (static
/// scenarios use a single-instant grid). Disabled channels give zero
/// measures. QoS trajectories are evaluated at the users' true positions;
/// the deposit location is the discretized path.
struct FrustratedMeasures {
    std::array<PathMeasure, 4> m;
};

FrustratedMeasures frustrated_measures(const Model& model, const TrajectoryConfig& cfg,
                                       const FrustrationSpec& spec, const PathGrid& grid);
FrustratedMeasures frustrated_measures(const Model& model, const PointConfig& cfg,
                                       const FrustrationSpec& spec, const PathGrid& grid);

/// Per-user frustration bitmask (bit i set = channel i frustrated), static.
std::vector<std::uint8_t> frustration_flags(const Model& model, const PointConfig& cfg,
                                            const FrustrationSpec& spec);

/// Per-user channel-i frustration counts divided by lambda.
std::array<double, 4> channel_masses(const Model& model, const PointConfig& cfg,
                                     const FrustrationSpec& spec);
std::array<double, 4> channel_masses(const Model& model, const TrajectoryConfig& cfg,
                                     const FrustrationSpec& spec, const TimeGrid& time);

/// Frustrated mass per channel of a measure: sum of nu(u) * tau_i over
/// occupied paths u, with QoS evaluated against nu itself.
std::array<double, 4> channel_masses(const Model& model, const PathMeasure& nu,
                                     const FrustrationSpec& spec);

/// 1 iff every b-constrained channel's mass strictly exceeds its b.
int event_indicator(const std::array<double, 4>& masses, const FrustrationSpec& spec);
int event_indicator(const FrustratedMeasures& fm, const FrustrationSpec& spec);

/// Time below threshold per occupied path and channel, evaluated against nu.
/// strict_less selects between the tau convention (<) and the worst-QoS
/// convention (<=).
std::vector<std::array<double, 4>> bad_time_per_path(const Model& model, const PathMeasure& nu,
                                                     const std::array<double, 4>& c,
                                                     ThresholdScale scale, bool strict_less);

/// Componentwise worst time below c over paths carrying mass (0 if none).
std::array<double, 4> worst_qos_duration(const Model& model, const std::array<double, 4>& c,
                                         const PathMeasure& nu,
                                         ThresholdScale scale = ThresholdScale::Qos);

/// Same, with each path's contribution damped by min{1, nu(u)/eps}.
std::array<double, 4> worst_qos_duration_eps(const Model& model, const std::array<double, 4>& c,
                                             const PathMeasure& nu, double eps,
                                             ThresholdScale scale = ThresholdScale::Qos);

} // namespace relnet
