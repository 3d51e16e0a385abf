#include "relnet/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace relnet {

TimeGrid::TimeGrid(double horizon, int delta_exponent) {
    if (!(horizon > 0.0)) throw std::invalid_argument("time horizon must be positive");
    TriadicParam p(delta_exponent);
    horizon_ = horizon;
    count_ = 1;
    for (int i = 0; i < delta_exponent; ++i) count_ *= 3;
    dt_ = horizon * p.delta();
}

PathGrid PathGrid::make(const Window& w, int delta_exponent, std::optional<double> horizon) {
    PathGrid g;
    g.spatial = CellLayout::triadic(w, delta_exponent);
    g.time = horizon ? TimeGrid(*horizon, delta_exponent) : TimeGrid::static_mode();
    return g;
}

DiscretePath discretize_path(const std::function<Vec2(double)>& x, const PathGrid& grid) {
    DiscretePath u(grid.time.count());
    for (std::size_t i = 0; i < grid.time.count(); ++i)
        u[i] = static_cast<std::int32_t>(grid.spatial->snap(x(grid.time.instant(i))));
    return u;
}

DiscretePath discretize_path(const Trajectory& x, const PathGrid& grid) {
    return discretize_path([&x](double t) { return x.at(t); }, grid);
}

DiscretePath discretize_path(const StepPath& x, const PathGrid& grid) {
    return discretize_path([&x](double t) { return x.at(t); }, grid);
}

StepPath embed_path(const DiscretePath& u, const PathGrid& grid) {
    if (u.size() != grid.time.count())
        throw std::invalid_argument("discrete path length does not match the time grid");
    std::vector<Vec2> vals(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        vals[i] = grid.spatial->center(static_cast<std::size_t>(u[i]));
    return StepPath(std::move(vals), grid.time.horizon());
}

PathMeasure discretize_measure(const WeightedTrajectories& nu, const PathGrid& grid) {
    if (nu.paths.size() != nu.weights.size())
        throw std::invalid_argument("trajectory list and weights differ in length");
    PathMeasure out;
    out.grid = grid;
    for (std::size_t i = 0; i < nu.paths.size(); ++i) {
        if (nu.weights[i] < 0.0) throw std::invalid_argument("weights must be nonnegative");
        out.add(discretize_path(nu.paths[i], grid), nu.weights[i]);
    }
    return out;
}

SpatialMeasure time_slice(const PathMeasure& nu, std::size_t t_index) {
    if (t_index >= nu.grid.time.count())
        throw std::out_of_range("instant is not on the time grid");
    SpatialMeasure m(nu.grid.spatial);
    for (const auto& [u, w] : nu.mass) m.mass[static_cast<std::size_t>(u[t_index])] += w;
    return m;
}

} // namespace relnet
