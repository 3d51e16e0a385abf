#pragma once

#include "relnet/pathloss.hpp"

namespace relnet {

/// Limiting direct-uplink QoS threshold on the disk B_r(o) under the flat
/// intensity: path loss at the boundary over total interference at the
/// origin.
double c0_uplink(double r, const PathLoss& ell);

/// Downlink counterpart: interference is measured at the boundary point.
double c0_downlink(double r, const PathLoss& ell);

/// Solve int_0^r 2 pi s exp(alpha ell(s)) ell(s) ds = ell(rho) / c for alpha.
/// The left side is strictly increasing in alpha, so the root is unique.
double solve_alpha(double rho, double c, double r, const PathLoss& ell);

/// Radial profile of the approximate rate minimizer for the direct-uplink
/// frustration event: an exponentially tilted density inside radius rho_min
/// and a flat level on the outer annulus holding mass b.
struct VariationalProfile {
    bool degenerate = false; // c >= c0: no deviation from the a-priori law needed
    double r = 0.0;
    double c = 0.0;
    double b = 0.0;
    double rho_min = 0.0;
    double alpha = 0.0;       // tilt constant at rho_min
    double outer_level = 0.0; // b / (pi (r^2 - rho_min^2))
    double objective = 0.0;   // value of the reduced objective at rho_min
    double gamma_int = 0.0;   // entropic cost of the tilted inner disk
    double gamma_out = 0.0;   // entropic cost of the flat outer annulus
};

VariationalProfile approx_minimizer(double r, double c, double b, const PathLoss& ell);

/// Reduced objective optimized over rho: inner tilt cost minus the annulus
/// log-volume term, with alpha solved per rho.
double variational_objective(double rho, double c, double b, double r, const PathLoss& ell);

/// Assembled two-piece density of the profile at radius s.
double profile_density(const VariationalProfile& p, const PathLoss& ell, double s);

} // namespace relnet
