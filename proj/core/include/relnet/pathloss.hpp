#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace relnet {

/// Signal decay over distance. Positive, Lipschitz, no singularity at 0.
///
/// Supported families (selected by name in scenario configs):
///   min-power:  ell(s) = min{cap, s^-exponent}
///   constant:   ell(s) = value
class PathLoss {
public:
    enum class Kind { MinPower, Constant };

    static PathLoss min_power(double cap, double exponent) {
        if (!(cap > 0.0) || !(exponent > 0.0))
            throw std::invalid_argument("min-power path loss needs cap > 0 and exponent > 0");
        PathLoss p;
        p.kind_ = Kind::MinPower;
        p.cap_ = cap;
        p.exponent_ = exponent;
        // cap is reached at s0 = cap^(-1/e); steepest slope sits just right of it
        p.knee_ = std::pow(cap, -1.0 / exponent);
        p.exp4_ = (exponent == 4.0);
        p.exp2_ = (exponent == 2.0);
        return p;
    }

    static PathLoss constant(double value) {
        if (!(value > 0.0)) throw std::invalid_argument("constant path loss must be positive");
        PathLoss p;
        p.kind_ = Kind::Constant;
        p.cap_ = value;
        return p;
    }

    Kind kind() const { return kind_; }

    double operator()(double s) const {
        if (kind_ == Kind::Constant) return cap_;
        if (s <= knee_) return cap_;
        return std::pow(s, -exponent_);
    }

    /// Evaluate from the squared distance; avoids sqrt and pow on the hot path.
    double eval_sq(double s_sq) const {
        if (exp4_) return std::min(cap_, 1.0 / (s_sq * s_sq));
        if (kind_ == Kind::Constant) return cap_;
        if (exp2_) return std::min(cap_, 1.0 / s_sq);
        return operator()(std::sqrt(s_sq));
    }

    /// Lipschitz constant J2 on [0, inf).
    double lipschitz() const {
        if (kind_ == Kind::Constant) return 0.0;
        // |ell'| peaks at the knee: e * knee^-(e+1) = e * cap^((e+1)/e)
        return exponent_ * std::pow(cap_, (exponent_ + 1.0) / exponent_);
    }

    /// Points where the function is not smooth, for quadrature splitting.
    std::vector<double> kinks() const {
        if (kind_ == Kind::MinPower) return {knee_};
        return {};
    }

    double cap() const { return cap_; }
    double exponent() const { return exponent_; }

private:
    PathLoss() = default;
    Kind kind_ = Kind::Constant;
    double cap_ = 1.0;
    double exponent_ = 0.0;
    double knee_ = 0.0;
    bool exp4_ = false;
    bool exp2_ = false;
};

/// Certified extrema of ell over [0, hi] via Lipschitz branch-and-bound.
struct PathLossExtrema {
    double ell_min;
    double ell_max;
};

PathLossExtrema certify_extrema(const PathLoss& ell, double hi, double tol = 1e-10);

} // namespace relnet
