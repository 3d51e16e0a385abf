#pragma once

#include <string>
#include <vector>

#include "relnet/analysis.hpp"
#include "relnet/measure.hpp"
#include "relnet/montecarlo.hpp"

namespace relnet {

/// Doubles are serialized with 17 significant digits so a write/read round
/// trip reproduces them bitwise.
std::string format_double(double v);

// --- CSV schemas (documented in the README) ----------------------------
// measures:  x,y,mass          one row per cell with nonzero mass
// profiles:  s,intensity
// hits:      run_id,x,y,channel_mask

void write_measure_csv(const std::string& path, const SpatialMeasure& m);
void write_profile_csv(const std::string& path, const RadialProfile& p);
void write_hits_csv(const std::string& path, const std::vector<HitRecord>& hits);

struct MeasureRow {
    double x, y, mass;
};
std::vector<MeasureRow> read_measure_csv(const std::string& path);
RadialProfile read_profile_csv(const std::string& path);
std::vector<HitRecord> read_hits_csv(const std::string& path);

/// Bind rows read back onto a layout (cells matched by snapping; rows must
/// sit inside the layout's window).
SpatialMeasure bind_measure(const std::vector<MeasureRow>& rows,
                            std::shared_ptr<const CellLayout> layout);

/// Result JSON carries exactly the estimate fields.
std::string estimate_to_json(const EstimateResult& r);
EstimateResult estimate_from_json(const std::string& text);

} // namespace relnet
