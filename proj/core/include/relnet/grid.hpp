#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "relnet/measure.hpp"
#include "relnet/trajectory.hpp"

namespace relnet {

/// Triadic mesh parameter delta = 3^-m, m >= 1.
struct TriadicParam {
    int m;
    explicit TriadicParam(int exponent) : m(exponent) {
        if (m < 1) throw std::invalid_argument("triadic exponent must be >= 1");
    }
    double delta() const {
        double d = 1.0;
        for (int i = 0; i < m; ++i) d /= 3.0;
        return d;
    }
};

/// Midpoint time grid on [0, T) with 1/delta instants, or the degenerate
/// single-instant grid for static scenarios (then dt = 1 by convention so
/// durations live in [0, 1]).
class TimeGrid {
public:
    static TimeGrid static_mode() { return TimeGrid(); }
    TimeGrid(double horizon, int delta_exponent);

    bool is_static() const { return !horizon_.has_value(); }
    std::size_t count() const { return count_; }
    double dt() const { return dt_; }
    double horizon() const { return horizon_ ? *horizon_ : 1.0; }
    double instant(std::size_t i) const { return is_static() ? 0.0 : dt_ * (i + 0.5); }

private:
    TimeGrid() = default;
    std::optional<double> horizon_;
    std::size_t count_ = 1;
    double dt_ = 1.0;
};

/// Space-time grid: triadic spatial cells plus the matching time grid.
struct PathGrid {
    std::shared_ptr<const CellLayout> spatial;
    TimeGrid time{TimeGrid::static_mode()};

    static PathGrid make(const Window& w, int delta_exponent, std::optional<double> horizon);
};

/// A path on the grid: one spatial cell index per time instant.
using DiscretePath = std::vector<std::int32_t>;

/// Sparse measure on the discrete path space. Only paths carrying mass are
/// stored; the full path space is never materialized.
struct PathMeasure {
    PathGrid grid;
    std::map<DiscretePath, double> mass;

    double total() const {
        double s = 0.0;
        for (const auto& [u, m] : mass) s += m;
        return s;
    }

    /// Largest single-path mass (0 for the empty measure).
    double kappa() const {
        double k = 0.0;
        for (const auto& [u, m] : mass) k = std::max(k, m);
        return k;
    }

    void add(const DiscretePath& u, double w) {
        if (w != 0.0) mass[u] += w;
    }
};

inline bool same_grid(const PathGrid& a, const PathGrid& b) {
    return a.spatial == b.spatial && a.time.count() == b.time.count() &&
           a.time.is_static() == b.time.is_static() && a.time.dt() == b.time.dt();
}

/// Step-function embedding of a discrete path: constant on each time slab.
class StepPath {
public:
    StepPath(std::vector<Vec2> values, double horizon)
        : values_(std::move(values)), horizon_(horizon) {}

    Vec2 at(double t) const {
        if (values_.size() == 1) return values_[0];
        double u = t / horizon_ * static_cast<double>(values_.size());
        auto i = static_cast<std::ptrdiff_t>(u);
        i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(values_.size()) - 1);
        return values_[static_cast<std::size_t>(i)];
    }

    const std::vector<Vec2>& values() const { return values_; }

private:
    std::vector<Vec2> values_;
    double horizon_;
};

DiscretePath discretize_path(const std::function<Vec2(double)>& x, const PathGrid& grid);
DiscretePath discretize_path(const Trajectory& x, const PathGrid& grid);
DiscretePath discretize_path(const StepPath& x, const PathGrid& grid);

StepPath embed_path(const DiscretePath& u, const PathGrid& grid);

/// Pushforward of a weighted trajectory list onto the path grid. Total mass
/// is preserved exactly (plain accumulation, no renormalization).
PathMeasure discretize_measure(const WeightedTrajectories& nu, const PathGrid& grid);

/// Marginal at time-grid instant `t_index`.
SpatialMeasure time_slice(const PathMeasure& nu, std::size_t t_index);

} // namespace relnet
