#pragma once

#include <functional>
#include <vector>

#include "relnet/pathloss.hpp"

namespace relnet {

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance.
/// Optional split points partition the interval first (kinks, etc.).
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 const std::vector<double>& splits = {});

/// Integral of ell(|x - offset*e1|) over the disk B_R(o), reduced to a radial
/// integral around the offset point (the arc length of each circle inside the
/// disk is available in closed form).
double disk_offset_integral(const PathLoss& ell, double R, double offset, double rel_tol = 1e-8);

} // namespace relnet
