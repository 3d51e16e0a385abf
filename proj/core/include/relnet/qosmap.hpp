#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace relnet {

/// Monotone map from SIR to quality of service: strictly increasing on
/// [0, rho_plus), constant c_plus from rho_plus on.
///
///   min-cap:      g(s) = min{s, K}
///   shannon-cap:  g(s) = min{log(1 + s), K}
class QosMap {
public:
    enum class Kind { MinCap, ShannonCap };

    static QosMap min_cap(double cap) { return QosMap(Kind::MinCap, cap); }
    static QosMap shannon_cap(double cap) { return QosMap(Kind::ShannonCap, cap); }

    Kind kind() const { return kind_; }
    double c_plus() const { return cap_; }

    double rho_plus() const {
        return kind_ == Kind::MinCap ? cap_ : std::expm1(cap_);
    }

    double lipschitz() const { return 1.0; } // both families have slope <= 1

    /// g(+inf) = c_plus, so a zero-interference sentinel stays finite here.
    double operator()(double sir) const {
        if (kind_ == Kind::MinCap) return std::min(sir, cap_);
        return std::min(std::log1p(sir), cap_);
    }

    /// Inverse on the strictly increasing branch; q must lie in [0, c_plus).
    double inverse(double q) const {
        if (!(q >= 0.0) || q >= cap_)
            throw std::invalid_argument("qos map inverse requires 0 <= q < c_plus");
        return kind_ == Kind::MinCap ? q : std::expm1(q);
    }

private:
    QosMap(Kind k, double cap) : kind_(k), cap_(cap) {
        if (!(cap > 0.0)) throw std::invalid_argument("qos cap must be positive");
    }
    Kind kind_;
    double cap_;
};

} // namespace relnet
