#include "relnet/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace relnet {

std::shared_ptr<const CellLayout> CellLayout::triadic(const Window& w, int delta_exponent) {
    if (delta_exponent < 1) throw std::invalid_argument("delta exponent m must be >= 1");
    double r = w.half_width();
    if (r < 1.0 || r != std::floor(r))
        throw std::invalid_argument("triadic discretization needs integer half-width r >= 1");

    int n = 1;
    for (int i = 0; i < delta_exponent; ++i) {
        if (n > 46000) throw std::invalid_argument("triadic grid too fine");
        n *= 3;
    }

    auto lay = std::shared_ptr<CellLayout>(new CellLayout());
    lay->n_side_ = n;
    lay->spacing_ = 2.0 * r / n;
    lay->half_width_ = r;
    lay->centers_.reserve(static_cast<std::size_t>(n) * n);
    lay->areas_.assign(static_cast<std::size_t>(n) * n, lay->spacing_ * lay->spacing_);
    double h = lay->spacing_;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            lay->centers_.push_back({-r + (ix + 0.5) * h, -r + (iy + 0.5) * h});
    lay->build_shells();
    return lay;
}

std::shared_ptr<const CellLayout> CellLayout::polar(double radius, int shells, int sectors) {
    if (!(radius > 0.0) || shells < 1 || sectors < 1)
        throw std::invalid_argument("polar layout needs radius > 0, shells >= 1, sectors >= 1");
    auto lay = std::shared_ptr<CellLayout>(new CellLayout());
    for (int j = 0; j < shells; ++j) {
        double s_in = radius * j / shells;
        double s_out = radius * (j + 1) / shells;
        double s_mid = 0.5 * (s_in + s_out);
        double area = std::numbers::pi * (s_out * s_out - s_in * s_in) / sectors;
        for (int k = 0; k < sectors; ++k) {
            double phi = 2.0 * std::numbers::pi * (k + 0.5) / sectors;
            lay->centers_.push_back({s_mid * std::cos(phi), s_mid * std::sin(phi)});
            lay->areas_.push_back(area);
            lay->shell_of_.push_back(j);
        }
    }
    lay->shell_count_ = shells;
    return lay;
}

void CellLayout::build_shells() {
    // Center radii on the triadic grid are h * sqrt(k) for integer k, so an
    // integer key groups shells exactly.
    const int n = n_side_;
    std::map<long long, int> shell_id;
    shell_of_.resize(centers_.size());
    std::vector<long long> keys(centers_.size());
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            long long dx = 2LL * ix - (n - 1);
            long long dy = 2LL * iy - (n - 1);
            keys[static_cast<std::size_t>(iy) * n + ix] = dx * dx + dy * dy;
        }
    }
    for (long long k : keys) shell_id.emplace(k, 0);
    int id = 0;
    for (auto& [k, v] : shell_id) v = id++;
    shell_count_ = id;
    for (std::size_t i = 0; i < keys.size(); ++i) shell_of_[i] = shell_id[keys[i]];
}

std::size_t CellLayout::snap(Vec2 p) const {
    if (!is_triadic()) throw std::logic_error("snap is only defined on triadic layouts");
    auto axis = [&](double v) -> int {
        double u = (v + half_width_) / spacing_;
        double fl = std::floor(u);
        int k = static_cast<int>(fl);
        if (u == fl && k > 0) k -= 1; // boundary tie: take the lower center
        return std::clamp(k, 0, n_side_ - 1);
    };
    return static_cast<std::size_t>(axis(p.y)) * n_side_ + axis(p.x);
}

SpatialMeasure SpatialMeasure::from_density(std::shared_ptr<const CellLayout> l,
                                            const std::function<double(Vec2)>& density) {
    SpatialMeasure m(std::move(l));
    for (std::size_t i = 0; i < m.layout->size(); ++i) {
        double d = density(m.layout->center(i));
        if (d < 0.0) throw std::invalid_argument("density must be nonnegative");
        m.mass[i] = d * m.layout->area(i);
    }
    return m;
}

SpatialMeasure SpatialMeasure::disk_lebesgue(std::shared_ptr<const CellLayout> l, double R) {
    return from_density(std::move(l),
                        [R](Vec2 c) { return norm_sq(c) <= R * R ? 1.0 : 0.0; });
}

} // namespace relnet
