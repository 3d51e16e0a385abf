#include "relnet/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "relnet/variational.hpp"

namespace relnet {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) fail(std::string(key) + " must be a number");
    return j[key].get<double>();
}

PathLoss parse_ell(const json& j) {
    std::string kind = j.value("kind", "");
    if (kind == "min-power")
        return PathLoss::min_power(j.value("cap", 1.0), require_number(j, "exponent"));
    if (kind == "constant") return PathLoss::constant(require_number(j, "value"));
    fail("ell.kind must be \"min-power\" or \"constant\"");
}

QosMap parse_g(const json& j) {
    std::string kind = j.value("kind", "");
    if (kind == "min-cap") return QosMap::min_cap(require_number(j, "cap"));
    if (kind == "shannon-cap") return QosMap::shannon_cap(require_number(j, "cap"));
    fail("g.kind must be \"min-cap\" or \"shannon-cap\"");
}

IntensitySpec parse_intensity(const json& j) {
    std::string kind = j.value("kind", "");
    double lambda = require_number(j, "lambda");
    if (kind == "uniform-disk")
        return IntensitySpec::uniform_disk(require_number(j, "radius"), lambda,
                                           j.value("density", 1.0));
    if (kind == "uniform-cube")
        return IntensitySpec::uniform_cube(require_number(j, "half_width"), lambda,
                                           j.value("density", 1.0));
    if (kind == "ring-strip")
        return IntensitySpec::ring_strip(
            require_number(j, "radius"), require_number(j, "center_radius"),
            require_number(j, "center_density"), require_number(j, "strip_inner"),
            require_number(j, "strip_outer"), require_number(j, "strip_density"),
            require_number(j, "boundary_inner"), require_number(j, "boundary_density"), lambda);
    if (kind == "piecewise-radial") {
        if (!j.contains("bands") || !j["bands"].is_array()) fail("piecewise-radial needs bands");
        std::vector<IntensitySpec::RadialBand> bands;
        for (const auto& b : j["bands"])
            bands.push_back({require_number(b, "inner"), require_number(b, "outer"),
                             require_number(b, "density")});
        return IntensitySpec::piecewise_radial(std::move(bands), lambda);
    }
    fail("intensity.kind must be uniform-disk, uniform-cube, ring-strip or piecewise-radial");
}

double parse_threshold(const json& j, const PathLoss& ell, const IntensitySpec& intensity) {
    if (j.is_number()) return j.get<double>();
    if (j.is_object() && j.contains("ref")) {
        if (!intensity.disk_supported())
            fail("c0 references need a disk-supported intensity");
        double r = intensity.support_radius();
        double scale = j.value("scale", 1.0);
        std::string ref = j["ref"].get<std::string>();
        if (ref == "c0-uplink") return scale * c0_uplink(r, ell);
        if (ref == "c0-downlink") return scale * c0_downlink(r, ell);
        fail("c ref must be \"c0-uplink\" or \"c0-downlink\"");
    }
    fail("channel c must be a number or {ref, scale}");
}

std::optional<double> parse_b(const json& j, const IntensitySpec& intensity) {
    if (!j.contains("b")) return std::nullopt;
    const json& b = j["b"];
    if (b.is_number()) return b.get<double>();
    // mass threshold given as a fraction of the a-priori total mass mu(W)
    if (b.is_object() && b.contains("fraction_of_mass"))
        return b["fraction_of_mass"].get<double>() * intensity.total_mass();
    if (b.is_string()) {
        std::string s = b.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    fail("channel b must be a number, {fraction_of_mass}, \"inf\" or \"-inf\"");
}

} // namespace

Scenario scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }

    Scenario sc;
    if (!j.contains("window")) fail("missing window");
    sc.window = Window(require_number(j["window"], "r"), static_cast<int>(j["window"].value("d", 2)));
    if (!j.contains("ell")) fail("missing ell");
    sc.ell = parse_ell(j["ell"]);
    if (!j.contains("g")) fail("missing g");
    sc.g = parse_g(j["g"]);
    sc.bs_interference = j.value("bs_interference", false);
    if (!j.contains("intensity")) fail("missing intensity");
    sc.intensity = parse_intensity(j["intensity"]);

    if (j.contains("mobility")) {
        std::string kind = j["mobility"].value("kind", "static");
        if (kind == "rwp") {
            sc.mobility.kind = MobilityModel::Kind::RandomWaypoint;
            sc.mobility.speed = require_number(j["mobility"], "speed");
            sc.mobility.pause = j["mobility"].value("pause", 0.0);
            if (sc.mobility.speed < 0.0 || sc.mobility.pause < 0.0)
                fail("mobility speed and pause must be >= 0");
        } else if (kind != "static") {
            fail("mobility.kind must be \"static\" or \"rwp\"");
        }
    }

    if (j.contains("grid") && !j["grid"].is_null()) {
        const json& gj = j["grid"];
        int m = static_cast<int>(require_number(gj, "delta_exponent"));
        if (m < 1) fail("grid.delta_exponent must be an integer >= 1");
        sc.grid_exponent = m;
        if (gj.contains("T") && !gj["T"].is_null()) {
            double T = gj["T"].get<double>();
            if (!(T > 0.0)) fail("grid.T must be positive");
            sc.horizon = T;
        }
        double r = sc.window.half_width();
        if (r < 1.0 || r != std::floor(r)) fail("triadic grids need integer window r >= 1");
    }

    if (j.contains("frustration")) {
        const json& fj = j["frustration"];
        std::string scale = fj.value("threshold_scale", "qos");
        if (scale == "raw-sir")
            sc.frustration.scale = ThresholdScale::RawSir;
        else if (scale != "qos")
            fail("threshold_scale must be \"qos\" or \"raw-sir\"");
        if (fj.contains("channels")) {
            for (int i = 0; i < 4; ++i) {
                const char* name = kChannelNames[static_cast<std::size_t>(i)];
                if (!fj["channels"].contains(name)) continue;
                const json& cj = fj["channels"][name];
                ChannelSpec& ch = sc.frustration.ch[i];
                ch.enabled = true;
                ch.a = cj.value("a", 0.0);
                if (!cj.contains("c")) fail(std::string("channel ") + name + " needs c");
                ch.c = parse_threshold(cj["c"], sc.ell, sc.intensity);
                ch.b = parse_b(cj, sc.intensity);
            }
        }
    }

    // cross-field validity
    double T = sc.horizon.value_or(1.0);
    bool statics = !sc.horizon.has_value();
    for (int i = 0; i < 4; ++i) {
        const ChannelSpec& ch = sc.frustration.ch[i];
        if (!ch.enabled) continue;
        const char* name = kChannelNames[static_cast<std::size_t>(i)];
        if (ch.c < 0.0) fail(std::string("channel ") + name + ": c must be >= 0");
        if (sc.frustration.scale == ThresholdScale::Qos && !(ch.c < sc.g.c_plus()))
            fail(std::string("channel ") + name + ": c must be < c_plus on the qos scale");
        if (ch.a < 0.0 || (!statics && !(ch.a < T)))
            fail(std::string("channel ") + name + ": need 0 <= a < T");
        if (statics && ch.a != 0.0)
            fail(std::string("channel ") + name + ": static scenarios force a = 0");
    }
    if (sc.intensity.support_radius() > sc.window.half_width() + 1e-12)
        fail("intensity support sticks out of the window");
    if (sc.mobility.kind == MobilityModel::Kind::RandomWaypoint && !sc.horizon)
        fail("mobile scenarios need grid.T");
    return sc;
}

Scenario scenario_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return scenario_from_json(ss.str());
}

std::string apply_override(const std::string& json_text, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos) fail("override must look like path.to.key=value");
    std::string path = assignment.substr(0, eq);
    std::string value = assignment.substr(eq + 1);

    json j = json::parse(json_text);
    json* cur = &j;
    std::size_t pos = 0;
    while (true) {
        std::size_t dot = path.find('.', pos);
        std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (key.empty()) fail("override path has an empty segment");
        if (dot == std::string::npos) {
            json v;
            try {
                v = json::parse(value);
            } catch (...) {
                v = value; // plain string
            }
            (*cur)[key] = v;
            break;
        }
        cur = &((*cur)[key]);
        pos = dot + 1;
    }
    return j.dump();
}

} // namespace relnet
