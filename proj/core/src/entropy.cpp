#include "relnet/entropy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace relnet {

double h_cell(double a, double b) {
    if (a < 0.0 || b < 0.0) throw std::invalid_argument("masses must be nonnegative");
    if (a == 0.0) return b;
    if (b == 0.0) return std::numeric_limits<double>::infinity();
    return a * std::log(a / b) - a + b;
}

double rel_entropy(const SpatialMeasure& nu, const SpatialMeasure& mu) {
    require_same_layout(nu, mu);
    double h = 0.0;
    for (std::size_t i = 0; i < nu.mass.size(); ++i) {
        h += h_cell(nu.mass[i], mu.mass[i]);
        if (std::isinf(h)) return h;
    }
    return h;
}

double rel_entropy(const PathMeasure& nu, const PathMeasure& mu) {
    if (!same_grid(nu.grid, mu.grid))
        throw std::invalid_argument("path measures live on different grids");
    double h = 0.0;
    for (const auto& [u, b] : mu.mass) {
        auto it = nu.mass.find(u);
        h += h_cell(it == nu.mass.end() ? 0.0 : it->second, b);
    }
    for (const auto& [u, a] : nu.mass) {
        if (a > 0.0 && mu.mass.find(u) == mu.mass.end())
            return std::numeric_limits<double>::infinity();
    }
    return h;
}

namespace {

template <typename M>
double scaling_residual(double a, const M& nu, const M& mu, double h_nu, double h_anu) {
    double rhs = a * h_nu + a * std::log(a) * nu.total() + (1.0 - a) * mu.total();
    if (std::isinf(h_anu) && std::isinf(rhs)) return 0.0;
    return std::abs(h_anu - rhs);
}

} // namespace

double entropy_scaling_residual(double a, const SpatialMeasure& nu, const SpatialMeasure& mu) {
    if (!(a > 0.0)) throw std::invalid_argument("scale must be positive");
    SpatialMeasure an = nu;
    for (double& m : an.mass) m *= a;
    return scaling_residual(a, nu, mu, rel_entropy(nu, mu), rel_entropy(an, mu));
}

double entropy_scaling_residual(double a, const PathMeasure& nu, const PathMeasure& mu) {
    if (!(a > 0.0)) throw std::invalid_argument("scale must be positive");
    PathMeasure an = nu;
    for (auto& [u, m] : an.mass) m *= a;
    return scaling_residual(a, nu, mu, rel_entropy(nu, mu), rel_entropy(an, mu));
}

SpatialMeasure radial_symmetrize(const SpatialMeasure& nu) {
    const CellLayout& lay = *nu.layout;
    std::vector<double> shell_sum(static_cast<std::size_t>(lay.shell_count()), 0.0);
    std::vector<std::size_t> shell_n(static_cast<std::size_t>(lay.shell_count()), 0);
    for (std::size_t i = 0; i < nu.mass.size(); ++i) {
        shell_sum[static_cast<std::size_t>(lay.shell_of(i))] += nu.mass[i];
        shell_n[static_cast<std::size_t>(lay.shell_of(i))] += 1;
    }
    SpatialMeasure out(nu.layout);
    for (std::size_t i = 0; i < nu.mass.size(); ++i) {
        auto s = static_cast<std::size_t>(lay.shell_of(i));
        out.mass[i] = shell_sum[s] / static_cast<double>(shell_n[s]);
    }
    return out;
}

} // namespace relnet
