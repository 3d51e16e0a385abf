#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "relnet/geometry.hpp"

namespace relnet {

/// Fixed arrangement of cells (center + area each), shared by all measures
/// living on it. Cells are grouped into radial shells by center distance to
/// the origin, which is what the rotational-symmetry operations work on.
///
/// Two factories: the triadic tiling of the window (supports snapping), and a
/// polar shell/sector partition of a disk (no snapping, used by the
/// entropy-minimization tests).
class CellLayout {
public:
    static std::shared_ptr<const CellLayout> triadic(const Window& w, int delta_exponent);
    static std::shared_ptr<const CellLayout> polar(double radius, int shells, int sectors);

    std::size_t size() const { return centers_.size(); }
    const std::vector<Vec2>& centers() const { return centers_; }
    Vec2 center(std::size_t i) const { return centers_[i]; }
    double area(std::size_t i) const { return areas_[i]; }
    int shell_of(std::size_t i) const { return shell_of_[i]; }
    int shell_count() const { return shell_count_; }

    bool is_triadic() const { return n_side_ > 0; }
    int n_side() const { return n_side_; }
    double spacing() const { return spacing_; }

    /// Index of the nearest cell center; boundary ties snap toward the
    /// lexicographically smallest center. Triadic layouts only.
    std::size_t snap(Vec2 p) const;

private:
    CellLayout() = default;
    void build_shells();

    std::vector<Vec2> centers_;
    std::vector<double> areas_;
    std::vector<int> shell_of_;
    int shell_count_ = 0;
    // triadic-only
    int n_side_ = 0;
    double spacing_ = 0.0;
    double half_width_ = 0.0;
};

/// Finite nonnegative measure on a cell layout: one mass per cell.
struct SpatialMeasure {
    std::shared_ptr<const CellLayout> layout;
    std::vector<double> mass;

    SpatialMeasure() = default;
    explicit SpatialMeasure(std::shared_ptr<const CellLayout> l)
        : layout(std::move(l)), mass(layout->size(), 0.0) {}

    double total() const {
        double s = 0.0;
        for (double m : mass) s += m;
        return s;
    }

    /// mass(cell) = density(center) * area(cell).
    static SpatialMeasure from_density(std::shared_ptr<const CellLayout> l,
                                       const std::function<double(Vec2)>& density);

    /// Restriction of Lebesgue measure to the disk B_R(o), cells kept whole
    /// by their center (rotation-invariant across shells by construction).
    static SpatialMeasure disk_lebesgue(std::shared_ptr<const CellLayout> l, double R);
};

inline void require_same_layout(const SpatialMeasure& a, const SpatialMeasure& b) {
    if (a.layout != b.layout)
        throw std::invalid_argument("measures live on different cell layouts");
}

} // namespace relnet
