#include "relnet/variational.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "relnet/quadrature.hpp"

namespace relnet {

namespace {

constexpr double kPi = std::numbers::pi;

double tilted_interference(double alpha, double r, const PathLoss& ell) {
    auto f = [&](double s) { return 2.0 * kPi * s * std::exp(alpha * ell(s)) * ell(s); };
    return integrate(f, 0.0, r, 1e-11 * std::max(1.0, std::exp(alpha * ell(0.0))), ell.kinks());
}

} // namespace

double c0_uplink(double r, const PathLoss& ell) {
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    auto f = [&](double s) { return 2.0 * kPi * s * ell(s); };
    double denom = integrate(f, 0.0, r, 1e-10, ell.kinks());
    return ell(r) / denom;
}

double c0_downlink(double r, const PathLoss& ell) {
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    return ell(r) / disk_offset_integral(ell, r, r, 1e-8);
}

double solve_alpha(double rho, double c, double r, const PathLoss& ell) {
    if (!(c > 0.0) || rho < 0.0 || rho > r)
        throw std::invalid_argument("need c > 0 and 0 <= rho <= r");
    const double target = ell(rho) / c;
    const double tol = 1e-8 * target;

    auto G = [&](double alpha) { return tilted_interference(alpha, r, ell); };

    double lo = 0.0, hi = 0.0;
    double g0 = G(0.0);
    if (std::abs(g0 - target) <= tol) return 0.0;
    if (g0 < target) {
        hi = 1.0;
        while (G(hi) < target) {
            hi *= 2.0;
            if (hi > 1e6) throw std::runtime_error("bracketing failed (target too large)");
        }
    } else {
        lo = -1.0;
        while (G(lo) > target) {
            lo *= 2.0;
            if (lo < -1e12) throw std::runtime_error("bracketing failed (target too small)");
        }
    }
    // bisection; each step halves the bracket, stop on residual
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        double gm = G(mid);
        if (std::abs(gm - target) <= tol) return mid;
        (gm < target ? lo : hi) = mid;
    }
    return mid;
}

namespace {

struct Reduced {
    double value;
    double alpha;
};

// inner tilt cost minus the annulus log-volume term
Reduced reduced_objective(double rho, double c, double b, double r, const PathLoss& ell) {
    double alpha = solve_alpha(rho, c, r, ell);
    auto f = [&](double s) {
        double al = alpha * ell(s);
        return 2.0 * kPi * s * std::exp(al) * (al - 1.0);
    };
    double inner = rho > 0.0
                       ? integrate(f, 0.0, rho, 1e-10 * std::max(1.0, std::exp(alpha * ell(0.0))),
                                   ell.kinks())
                       : 0.0;
    return {inner - b * std::log(kPi * (r * r - rho * rho)), alpha};
}

} // namespace

double variational_objective(double rho, double c, double b, double r, const PathLoss& ell) {
    return reduced_objective(rho, c, b, r, ell).value;
}

VariationalProfile approx_minimizer(double r, double c, double b, const PathLoss& ell) {
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    if (!(b > 0.0) || !(b < kPi * r * r))
        throw std::invalid_argument("need 0 < b < pi r^2");

    VariationalProfile p;
    p.r = r;
    p.c = c;
    p.b = b;

    double c0 = c0_uplink(r, ell);
    if (c >= c0) {
        p.degenerate = true;
        return p;
    }

    const double rho_max = r * (1.0 - 1e-9);
    auto obj = [&](double rho) { return reduced_objective(rho, c, b, r, ell).value; };

    // 64-point prescan, then golden-section inside the bracketing neighbors
    const int kScan = 64;
    int best_k = 0;
    double best_v = obj(0.0);
    for (int k = 1; k <= kScan; ++k) {
        double rho = rho_max * k / kScan;
        double v = obj(rho);
        if (v < best_v) {
            best_v = v;
            best_k = k;
        }
    }
    double lo = rho_max * std::max(0, best_k - 1) / kScan;
    double hi = rho_max * std::min(kScan, best_k + 1) / kScan;

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = obj(x1), f2 = obj(x2);
    while (hi - lo > 1e-10 * r) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = obj(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = obj(x2);
        }
    }
    double rho_min = 0.5 * (lo + hi);
    Reduced red = reduced_objective(rho_min, c, b, r, ell);

    p.rho_min = rho_min;
    p.alpha = red.alpha;
    p.objective = red.value;
    p.outer_level = b / (kPi * (r * r - rho_min * rho_min));
    p.gamma_int = (red.value + b * std::log(kPi * (r * r - rho_min * rho_min))) +
                  kPi * rho_min * rho_min;
    p.gamma_out = b * std::log(p.outer_level) - b + kPi * (r * r - rho_min * rho_min);
    return p;
}

double profile_density(const VariationalProfile& p, const PathLoss& ell, double s) {
    if (p.degenerate) return 1.0;
    if (s < 0.0 || s > p.r) return 0.0;
    if (s <= p.rho_min) return std::exp(p.alpha * ell(s));
    return p.outer_level;
}

} // namespace relnet
