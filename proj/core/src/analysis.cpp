#include "relnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace relnet {

namespace {
constexpr double kPi = std::numbers::pi;
}

double silverman_bandwidth(std::vector<double> radii) {
    const std::size_t n = radii.size();
    if (n < 2) return 1.0;
    double mean = 0.0;
    for (double s : radii) mean += s;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double s : radii) var += (s - mean) * (s - mean);
    var /= static_cast<double>(n - 1);
    double sd = std::sqrt(var);

    std::sort(radii.begin(), radii.end());
    auto quantile = [&](double q) {
        double pos = q * static_cast<double>(n - 1);
        std::size_t lo = static_cast<std::size_t>(pos);
        double frac = pos - static_cast<double>(lo);
        return lo + 1 < n ? radii[lo] * (1.0 - frac) + radii[lo + 1] * frac : radii[lo];
    };
    double iqr = quantile(0.75) - quantile(0.25);
    double spread = sd;
    if (iqr > 0.0) spread = std::min(spread, iqr / 1.34);
    if (!(spread > 0.0)) spread = std::max(sd, 1e-6);
    return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

RadialProfile kde_radial(const std::vector<double>& radii, const std::vector<double>& weights,
                         double r, std::optional<double> bandwidth, std::size_t grid_points) {
    if (radii.empty()) throw std::invalid_argument("kde_radial needs at least one observation");
    if (radii.size() != weights.size())
        throw std::invalid_argument("radii and weights differ in length");
    if (!(r > 0.0)) throw std::invalid_argument("disk radius must be positive");

    double bw = bandwidth ? *bandwidth : silverman_bandwidth(radii);
    if (!(bw > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    const double s_floor = r / 100.0;

    RadialProfile prof;
    prof.radii.resize(grid_points);
    prof.intensity.assign(grid_points, 0.0);
    const double inv_bw = 1.0 / bw;
    const double norm = 1.0 / (std::sqrt(2.0 * kPi) * bw);

    for (std::size_t gidx = 0; gidx < grid_points; ++gidx)
        prof.radii[gidx] = r * (static_cast<double>(gidx) + 0.5) / static_cast<double>(grid_points);

    for (std::size_t k = 0; k < radii.size(); ++k) {
        double s = radii[k];
        if (s < 0.0 || s > r) throw std::invalid_argument("radius outside [0, r]");
        double w = weights[k] / (2.0 * kPi * std::max(s, s_floor));
        // observation plus its mirror images at both boundaries
        const double images[3] = {s, -s, 2.0 * r - s};
        for (std::size_t gidx = 0; gidx < grid_points; ++gidx) {
            double acc = 0.0;
            for (double img : images) {
                double z = (prof.radii[gidx] - img) * inv_bw;
                acc += std::exp(-0.5 * z * z);
            }
            prof.intensity[gidx] += w * norm * acc;
        }
    }
    return prof;
}

std::optional<double> cluster_angle(const std::vector<Vec2>& points) {
    if (points.empty()) throw std::invalid_argument("cluster_angle needs a nonempty set");
    Vec2 c{};
    double scale = 0.0;
    for (const Vec2& p : points) {
        c = c + p;
        scale += norm(p);
    }
    c = (1.0 / static_cast<double>(points.size())) * c;
    scale /= static_cast<double>(points.size());
    if (norm(c) <= 1e-12 * std::max(scale, 1.0)) return std::nullopt;
    return std::atan2(c.y, c.x);
}

CircularStats circular_stats(const std::vector<double>& angles) {
    CircularStats st;
    st.n = angles.size();
    if (angles.empty()) return st;
    double cs = 0.0, sn = 0.0;
    for (double a : angles) {
        cs += std::cos(a);
        sn += std::sin(a);
    }
    cs /= static_cast<double>(st.n);
    sn /= static_cast<double>(st.n);
    st.resultant = std::sqrt(cs * cs + sn * sn);
    st.mean_angle = std::atan2(sn, cs);
    st.circ_variance = 1.0 - st.resultant;
    return st;
}

double rayleigh_pvalue(const std::vector<double>& angles) {
    CircularStats st = circular_stats(angles);
    if (st.n == 0) return 1.0;
    double n = static_cast<double>(st.n);
    double Z = n * st.resultant * st.resultant;
    double p = std::exp(-Z) *
               (1.0 + (2.0 * Z - Z * Z) / (4.0 * n) -
                (24.0 * Z - 132.0 * Z * Z + 76.0 * Z * Z * Z - 9.0 * Z * Z * Z * Z) /
                    (288.0 * n * n));
    return std::clamp(p, 0.0, 1.0);
}

} // namespace relnet
