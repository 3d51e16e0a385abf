#pragma once

#include <array>
#include <limits>
#include <span>
#include <vector>

#include "relnet/geometry.hpp"
#include "relnet/measure.hpp"
#include "relnet/pathloss.hpp"
#include "relnet/qosmap.hpp"
#include "relnet/trajectory.hpp"

namespace relnet {

/// A realization of users at one instant, in transmitter counts. The
/// associated empirical measure is this configuration rescaled by 1/lambda.
struct PointConfig {
    std::vector<Vec2> points;
    double lambda = 1.0;
};

/// View of an atomic measure (positions + masses), already in measure scale.
struct AtomView {
    std::span<const Vec2> pos;
    std::span<const double> mass;
};

enum class ThresholdScale { Qos, RawSir };

enum Channel : int { ChUp = 0, ChUpDir = 1, ChDown = 2, ChDownDir = 3 };
constexpr std::array<const char*, 4> kChannelNames{"up", "up_dir", "do", "do_dir"};

/// Per-user (or per-cell) values of the four communication channels:
/// relayed uplink, direct uplink, relayed downlink, direct downlink.
struct QosTable {
    std::array<std::vector<double>, 4> ch;
    std::size_t size() const { return ch[ChUpDir].size(); }
};

/// Window, path loss and QoS map bundled with the derived constants the
/// computations need. Interference always includes the transmitter's own
/// signal; if `bs_interference` is set, the base station at the origin is
/// counted as one extra transmitter in point-configuration evaluations.
class Model {
public:
    Model(Window w, PathLoss ell, QosMap g, bool bs_interference = false);

    const Window& window() const { return window_; }
    const PathLoss& ell() const { return ell_; }
    const QosMap& g() const { return g_; }
    bool bs_interference() const { return bs_; }

    double ell_min() const { return ell_min_; }
    double ell_max() const { return ell_max_; }

    /// Total-mass threshold below which every direct link sits at c_plus.
    double beta_o() const { return beta_o_; }

    // --- interference ---------------------------------------------------
    /// Sum of received powers over all transmitters (raw transmitter scale).
    double interference(Vec2 eta, const PointConfig& cfg) const;
    /// Integral of the path loss against the measure.
    double interference(Vec2 eta, const SpatialMeasure& nu) const;
    double interference(Vec2 eta, AtomView nu) const;

    // --- rescaled SIR (returns +inf when there is no interference) -------
    double sir(Vec2 xi, Vec2 eta, const PointConfig& cfg) const;
    double sir(Vec2 xi, Vec2 eta, const SpatialMeasure& nu) const;
    double sir(Vec2 xi, Vec2 eta, AtomView nu) const;

    // --- quality of service ----------------------------------------------
    double qos_direct(Vec2 xi, Vec2 eta, const PointConfig& cfg) const;
    double qos_direct(Vec2 xi, Vec2 eta, const SpatialMeasure& nu) const;
    double qos_direct(Vec2 xi, Vec2 eta, AtomView nu) const;

    /// Two-hop link through a relay: the worse of the two hops.
    double qos_relay_link(Vec2 xi, Vec2 zeta, Vec2 eta, const PointConfig& cfg) const;
    double qos_relay_link(Vec2 xi, Vec2 zeta, Vec2 eta, const SpatialMeasure& nu) const;
    double qos_relay_link(Vec2 xi, Vec2 zeta, Vec2 eta, AtomView nu) const;

    /// Best of direct and optimally relayed transmission toward the origin.
    /// Point configurations relay over every user (including xi itself);
    /// measures relay over cells carrying strictly positive mass.
    double qos_relayed_uplink(Vec2 xi, const PointConfig& cfg) const;
    double qos_relayed_uplink(Vec2 xi, const SpatialMeasure& nu) const;
    double qos_relayed_uplink(Vec2 xi, AtomView nu) const;

    double qos_relayed_downlink(Vec2 xi, const PointConfig& cfg) const;
    double qos_relayed_downlink(Vec2 xi, const SpatialMeasure& nu) const;
    double qos_relayed_downlink(Vec2 xi, AtomView nu) const;

private:
    Window window_;
    PathLoss ell_;
    QosMap g_;
    bool bs_;
    double ell_min_, ell_max_, beta_o_;
};

/// Channel values for every user of a configuration, computed with shared
/// interference sums. `need[i]` selects the channels to fill. Channels whose
/// receivers sit at user positions, and both relayed channels, cost O(N^2)
/// per call; a direct-uplink-only request costs O(N).
QosTable qos_table(const Model& model, const PointConfig& cfg, std::array<bool, 4> need,
                   ThresholdScale scale);

/// Same, per cell of a static spatial measure, evaluated at occupied cells.
/// `values[i]` is filled only for cells with positive mass (others are c_plus
/// placeholders, never read by the callers).
QosTable qos_table(const Model& model, const SpatialMeasure& nu, std::array<bool, 4> need,
                   ThresholdScale scale);

} // namespace relnet
