#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relnet/frustration.hpp"
#include "relnet/model.hpp"
#include "relnet/rng.hpp"
#include "relnet/trajectory.hpp"

namespace relnet {

/// Spatial intensity of the user process; the Poisson process has intensity
/// lambda * mu where mu carries the density described here.
class IntensitySpec {
public:
    enum class Kind { UniformDisk, UniformCube, RingStrip, PiecewiseRadial };

    struct RadialBand {
        double inner, outer, density;
    };

    static IntensitySpec uniform_disk(double radius, double lambda, double density = 1.0);
    static IntensitySpec uniform_cube(double half_width, double lambda, double density = 1.0);
    static IntensitySpec piecewise_radial(std::vector<RadialBand> bands, double lambda);
    /// Dense center disk and boundary ring, thin low-density relay strip at
    /// mid radius, nothing else.
    static IntensitySpec ring_strip(double radius, double center_radius, double center_density,
                                    double strip_inner, double strip_outer, double strip_density,
                                    double boundary_inner, double boundary_density, double lambda);

    Kind kind() const { return kind_; }
    double lambda() const { return lambda_; }
    void set_lambda(double l) { lambda_ = l; }

    /// mu(W): total mass of the intensity measure.
    double total_mass() const { return total_mass_; }
    /// Radius of the support disk (half-width for cubes).
    double support_radius() const { return support_radius_; }
    bool disk_supported() const { return kind_ != Kind::UniformCube; }

    double density(Vec2 p) const;
    /// One point from the normalized density.
    Vec2 sample(SplitMix64& rng) const;

private:
    IntensitySpec() = default;
    Kind kind_ = Kind::UniformDisk;
    double lambda_ = 1.0;
    double total_mass_ = 0.0;
    double support_radius_ = 0.0;
    double density_ = 1.0;                   // uniform kinds
    std::vector<RadialBand> bands_;          // radial kinds
    std::vector<double> band_cum_;           // cumulative band masses
};

/// N ~ Poisson(lambda * mu(W)) points i.i.d. from the normalized density;
/// identical output for identical (spec, seed).
PointConfig sample_poisson(const IntensitySpec& spec, std::uint64_t seed);

struct EstimateOptions {
    std::uint64_t runs = 0;
    std::uint64_t seed = 1;
    int workers = 1;
    bool collect_hits = false;
};

struct EstimateResult {
    std::uint64_t hits = 0;
    std::uint64_t runs = 0;
    double p_hat = 0.0;
    double std_err = 0.0;
    double rate_hat = 0.0; // -(1/lambda) log p_hat
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
};

struct HitRecord {
    std::uint64_t run_id;
    std::vector<Vec2> points;
    std::vector<std::uint8_t> flags; // channel bitmask per user
};

/// True when every event channel can be decided from the interference at the
/// origin alone (cost O(N) per run instead of O(N^2)).
bool origin_only_event(const FrustrationSpec& spec);

/// Parallel naive Monte Carlo estimate of the frustration-event probability.
/// Run k draws its stream from seed ^ k, so the result does not depend on
/// the worker count. Mobile scenarios additionally need the time grid.
EstimateResult estimate_probability(const Model& model, const IntensitySpec& intensity,
                                    const FrustrationSpec& spec, const EstimateOptions& opts,
                                    const MobilityModel& mobility = {},
                                    const std::optional<TimeGrid>& time = std::nullopt,
                                    std::vector<HitRecord>* hits_out = nullptr);

struct RatePoint {
    double lambda;
    double p_hat;
    double rate_hat;
};

/// Estimates across a list of intensity scales.
std::vector<RatePoint> rate_curve(const Model& model, IntensitySpec intensity,
                                  const FrustrationSpec& spec, const std::vector<double>& lambdas,
                                  std::uint64_t runs_per_lambda, std::uint64_t seed,
                                  int workers = 1);

} // namespace relnet
