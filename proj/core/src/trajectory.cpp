#include "relnet/trajectory.hpp"

#include <algorithm>
#include <stdexcept>

namespace relnet {

Trajectory::Trajectory(std::vector<double> times, std::vector<Vec2> positions, double horizon)
    : times_(std::move(times)), positions_(std::move(positions)), horizon_(horizon) {
    if (times_.empty() || times_.size() != positions_.size())
        throw std::invalid_argument("trajectory needs matching, nonempty knot vectors");
    if (times_.front() != 0.0) throw std::invalid_argument("first knot must be at t = 0");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1]))
            throw std::invalid_argument("knot times must be strictly increasing");
    if (times_.back() < horizon_ && times_.size() > 1)
        throw std::invalid_argument("last knot must reach the horizon");
}

Trajectory Trajectory::constant(Vec2 p, double horizon) {
    return Trajectory({0.0}, {p}, horizon);
}

Vec2 Trajectory::at(double t) const {
    if (positions_.size() == 1) return positions_[0];
    if (t <= 0.0) return positions_.front();
    if (t >= times_.back()) return positions_.back();
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - times_.begin());
    double t0 = times_[i - 1], t1 = times_[i];
    double w = (t - t0) / (t1 - t0);
    return positions_[i - 1] + w * (positions_[i] - positions_[i - 1]);
}

Trajectory sample_rwp(Vec2 start, const Window& w, double speed, double pause, double horizon,
                      SplitMix64& rng) {
    if (speed < 0.0 || pause < 0.0) throw std::invalid_argument("speed and pause must be >= 0");
    if (speed == 0.0) return Trajectory::constant(start, horizon);

    std::vector<double> times{0.0};
    std::vector<Vec2> pos{start};
    double t = 0.0;
    Vec2 cur = start;
    double r = w.half_width();
    while (t < horizon) {
        Vec2 wp{rng.uniform(-r, r), rng.uniform(-r, r)};
        double leg = dist(cur, wp) / speed;
        if (leg > 0.0) {
            t += leg;
            times.push_back(t);
            pos.push_back(wp);
            cur = wp;
            if (t >= horizon) break;
        }
        if (pause > 0.0) {
            // hold position; encoded as a tiny-slope-free duplicate knot pair
            t += pause;
            times.push_back(t);
            pos.push_back(cur);
            if (t >= horizon) break;
        }
    }
    return Trajectory(std::move(times), std::move(pos), horizon);
}

Trajectory sample_trajectory(const MobilityModel& model, const Window& w, double horizon,
                             Vec2 start, std::uint64_t seed) {
    if (model.kind == MobilityModel::Kind::Static || model.speed == 0.0)
        return Trajectory::constant(start, horizon);
    SplitMix64 rng(seed);
    return sample_rwp(start, w, model.speed, model.pause, horizon, rng);
}

} // namespace relnet
