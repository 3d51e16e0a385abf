#pragma once

#include <array>
#include <cstdint>

#include "relnet/frustration.hpp"
#include "relnet/grid.hpp"
#include "relnet/model.hpp"

namespace relnet {

struct MinimizeOptions {
    int restarts = 16;
    std::uint64_t seed = 1;
    int workers = 1;
    int penalty_levels = 8;
    int max_inner = 300;     // projected-gradient iterations per penalty level
    double penalty0 = 10.0;  // initial penalty weight, escalated geometrically
    double noise = 0.5;      // lognormal spread of perturbed starts
};

struct MinimizerResult {
    PathMeasure measure;
    double entropy = 0.0;
    /// max over active channels of (b_i + eps_i - m_i); <= 0 means feasible.
    double constraint_residual = 0.0;
    std::array<double, 4> channel_mass{};
    double eps_feas = 0.0;
    int restarts_used = 0;
    bool feasible = false;
    bool converged = false;
};

/// Constrained minimization of h(nu | mu) over nonnegative masses on the
/// support of mu, subject to the frustrated mass of every b-constrained
/// channel exceeding its threshold. Penalty + projected gradient descent
/// with finite-difference handling of the indicator terms, multi-start.
MinimizerResult minimize_rate(const Model& model, const PathMeasure& mu,
                              const FrustrationSpec& spec, const MinimizeOptions& opts = {});

/// Convenience wrapper for static scenarios.
MinimizerResult minimize_rate(const Model& model, const SpatialMeasure& mu,
                              const FrustrationSpec& spec, const MinimizeOptions& opts = {});

/// Static spatial measure carried by a single-instant path measure.
PathMeasure lift_static(const SpatialMeasure& mu);
SpatialMeasure project_static(const PathMeasure& nu);

} // namespace relnet
