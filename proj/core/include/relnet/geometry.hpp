#pragma once

#include <cmath>
#include <stdexcept>

namespace relnet {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm_sq(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::sqrt(norm_sq(a)); }
inline double dist_sq(Vec2 a, Vec2 b) { return norm_sq(a - b); }
inline double dist(Vec2 a, Vec2 b) { return std::sqrt(dist_sq(a, b)); }

/// Square observation window [-r, r]^2 centered at the base station (origin).
class Window {
public:
    explicit Window(double half_width, int dim = 2) : r_(half_width), d_(dim) {
        if (!(half_width > 0.0)) throw std::invalid_argument("window half-width must be positive");
        if (dim != 2) throw std::invalid_argument("only dimension 2 is supported");
    }

    double half_width() const { return r_; }
    int dim() const { return d_; }
    double diameter() const { return 2.0 * r_ * std::sqrt(2.0); }

    bool contains(Vec2 p, double tol = 0.0) const {
        return std::abs(p.x) <= r_ + tol && std::abs(p.y) <= r_ + tol;
    }

private:
    double r_;
    int d_;
};

} // namespace relnet
