#include "relnet/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace relnet {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    return f;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_measure_csv(const std::string& path, const SpatialMeasure& m) {
    auto f = open_out(path);
    f << "x,y,mass\n";
    for (std::size_t i = 0; i < m.mass.size(); ++i) {
        if (m.mass[i] == 0.0) continue;
        Vec2 c = m.layout->center(i);
        f << format_double(c.x) << ',' << format_double(c.y) << ','
          << format_double(m.mass[i]) << '\n';
    }
}

void write_profile_csv(const std::string& path, const RadialProfile& p) {
    auto f = open_out(path);
    f << "s,intensity\n";
    for (std::size_t i = 0; i < p.radii.size(); ++i)
        f << format_double(p.radii[i]) << ',' << format_double(p.intensity[i]) << '\n';
}

void write_hits_csv(const std::string& path, const std::vector<HitRecord>& hits) {
    auto f = open_out(path);
    f << "run_id,x,y,channel_mask\n";
    for (const auto& h : hits)
        for (std::size_t i = 0; i < h.points.size(); ++i)
            f << h.run_id << ',' << format_double(h.points[i].x) << ','
              << format_double(h.points[i].y) << ',' << static_cast<int>(h.flags[i]) << '\n';
}

std::vector<MeasureRow> read_measure_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    if (!std::getline(f, line) || line.rfind("x,y,mass", 0) != 0)
        throw std::runtime_error("bad measure CSV header in " + path);
    std::vector<MeasureRow> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        auto parts = split_csv(line);
        if (parts.size() != 3) throw std::runtime_error("bad measure CSV row: " + line);
        rows.push_back({std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])});
    }
    return rows;
}

RadialProfile read_profile_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    if (!std::getline(f, line) || line.rfind("s,intensity", 0) != 0)
        throw std::runtime_error("bad profile CSV header in " + path);
    RadialProfile p;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        auto parts = split_csv(line);
        if (parts.size() != 2) throw std::runtime_error("bad profile CSV row: " + line);
        p.radii.push_back(std::stod(parts[0]));
        p.intensity.push_back(std::stod(parts[1]));
    }
    return p;
}

std::vector<HitRecord> read_hits_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    if (!std::getline(f, line) || line.rfind("run_id,x,y,channel_mask", 0) != 0)
        throw std::runtime_error("bad hits CSV header in " + path);
    std::vector<HitRecord> hits;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        auto parts = split_csv(line);
        if (parts.size() != 4) throw std::runtime_error("bad hits CSV row: " + line);
        std::uint64_t id = std::stoull(parts[0]);
        if (hits.empty() || hits.back().run_id != id) {
            hits.push_back({id, {}, {}});
        }
        hits.back().points.push_back({std::stod(parts[1]), std::stod(parts[2])});
        hits.back().flags.push_back(static_cast<std::uint8_t>(std::stoi(parts[3])));
    }
    return hits;
}

SpatialMeasure bind_measure(const std::vector<MeasureRow>& rows,
                            std::shared_ptr<const CellLayout> layout) {
    SpatialMeasure m(std::move(layout));
    for (const auto& r : rows) {
        std::size_t i = m.layout->snap({r.x, r.y});
        m.mass[i] += r.mass;
    }
    return m;
}

std::string estimate_to_json(const EstimateResult& r) {
    nlohmann::json j;
    j["hits"] = r.hits;
    j["runs"] = r.runs;
    j["p_hat"] = r.p_hat;
    j["std_err"] = r.std_err;
    j["rate_hat"] = std::isfinite(r.rate_hat) ? nlohmann::json(r.rate_hat) : nlohmann::json();
    j["wall_seconds"] = r.wall_seconds;
    j["seed"] = r.seed;
    return j.dump(2) + "\n";
}

EstimateResult estimate_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    EstimateResult r;
    r.hits = j.at("hits").get<std::uint64_t>();
    r.runs = j.at("runs").get<std::uint64_t>();
    r.p_hat = j.at("p_hat").get<double>();
    r.std_err = j.at("std_err").get<double>();
    r.rate_hat = j.at("rate_hat").is_null() ? std::numeric_limits<double>::infinity()
                                            : j.at("rate_hat").get<double>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
}

} // namespace relnet
