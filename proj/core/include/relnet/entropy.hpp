#pragma once

#include "relnet/grid.hpp"
#include "relnet/measure.hpp"

namespace relnet {

/// Cellwise relative entropy h(a|b) = a log(a/b) - a + b, with h(0|b) = b and
/// h(a|0) = +inf for a > 0.
double h_cell(double a, double b);

double rel_entropy(const SpatialMeasure& nu, const SpatialMeasure& mu);
double rel_entropy(const PathMeasure& nu, const PathMeasure& mu);

/// |h(a*nu|mu) - (a h(nu|mu) + a log(a) nu(L) + (1-a) mu(L))|, a test oracle.
double entropy_scaling_residual(double a, const SpatialMeasure& nu, const SpatialMeasure& mu);
double entropy_scaling_residual(double a, const PathMeasure& nu, const PathMeasure& mu);

/// Replace each radial shell's cell masses by their shell average. Preserves
/// total and per-shell mass; never increases entropy relative to a
/// rotation-invariant reference.
SpatialMeasure radial_symmetrize(const SpatialMeasure& nu);

} // namespace relnet
