#pragma once

#include <optional>
#include <string>

#include "relnet/frustration.hpp"
#include "relnet/grid.hpp"
#include "relnet/model.hpp"
#include "relnet/montecarlo.hpp"
#include "relnet/trajectory.hpp"

namespace relnet {

/// Everything one experiment needs, loaded from a JSON scenario file and
/// cross-validated. QoS thresholds may reference the limiting boundary
/// values ("c0-uplink" / "c0-downlink", optionally scaled), which are
/// resolved against the configured path loss and intensity support.
struct Scenario {
    Window window{1.0};
    PathLoss ell = PathLoss::constant(1.0);
    QosMap g = QosMap::min_cap(1.0);
    bool bs_interference = false;
    IntensitySpec intensity = IntensitySpec::uniform_disk(1.0, 1.0);
    MobilityModel mobility;
    FrustrationSpec frustration;
    std::optional<int> grid_exponent;
    std::optional<double> horizon; // absent = static

    Model model() const { return Model(window, ell, g, bs_interference); }
    std::optional<PathGrid> grid() const {
        if (!grid_exponent) return std::nullopt;
        return PathGrid::make(window, *grid_exponent, horizon);
    }
    std::optional<TimeGrid> time_grid() const {
        auto gr = grid();
        if (!gr) return std::nullopt;
        return gr->time;
    }
};

/// Throws std::invalid_argument with a readable message on any config error.
Scenario scenario_from_json(const std::string& json_text);
Scenario scenario_from_file(const std::string& path);

/// Apply a dotted-path override (e.g. "intensity.lambda=100") to raw JSON
/// text; the value is parsed as JSON, falling back to a string.
std::string apply_override(const std::string& json_text, const std::string& assignment);

} // namespace relnet
