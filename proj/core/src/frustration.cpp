#include "relnet/frustration.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace relnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double ratio_or_inf(double num, double den) {
    return den > 0.0 ? num / den : kInf;
}

struct ScaleFn {
    const QosMap* g;
    bool raw;
    double operator()(double sir) const { return raw ? sir : (*g)(sir); }
};

// Occupied-cell atoms of one time slice, with cached interference values.
struct Slice {
    std::vector<std::int32_t> cells; // sorted
    std::vector<Vec2> pos;
    std::vector<double> mass;
    std::vector<double> iu;     // interference at each atom
    std::vector<double> updir;  // direct-uplink value of each atom
    std::vector<double> dndir;  // direct-downlink value of each atom
    double io = 0.0;

    std::size_t find(std::int32_t cell) const {
        auto it = std::lower_bound(cells.begin(), cells.end(), cell);
        return static_cast<std::size_t>(it - cells.begin());
    }
};

std::vector<Slice> build_slices(const Model& model, const PathMeasure& nu, ThresholdScale scale) {
    const auto& layout = *nu.grid.spatial;
    const PathLoss& ell = model.ell();
    ScaleFn T{&model.g(), scale == ThresholdScale::RawSir};
    std::size_t steps = nu.grid.time.count();

    std::vector<Slice> slices(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        std::map<std::int32_t, double> acc;
        for (const auto& [u, w] : nu.mass)
            if (w > 0.0) acc[u[t]] += w;
        Slice& s = slices[t];
        for (const auto& [cell, w] : acc) {
            s.cells.push_back(cell);
            s.pos.push_back(layout.center(static_cast<std::size_t>(cell)));
            s.mass.push_back(w);
        }
        const std::size_t k = s.cells.size();
        s.iu.resize(k);
        s.updir.resize(k);
        s.dndir.resize(k);
        for (std::size_t a = 0; a < k; ++a) s.io += s.mass[a] * ell.eval_sq(norm_sq(s.pos[a]));
        for (std::size_t a = 0; a < k; ++a) {
            double acc_i = 0.0;
            for (std::size_t b = 0; b < k; ++b)
                acc_i += s.mass[b] * ell.eval_sq(dist_sq(s.pos[a], s.pos[b]));
            s.iu[a] = acc_i;
            double e0 = ell.eval_sq(norm_sq(s.pos[a]));
            s.updir[a] = T(ratio_or_inf(e0, s.io));
            s.dndir[a] = T(ratio_or_inf(e0, s.iu[a]));
        }
    }
    return slices;
}

std::array<double, 4> path_values_at(const Model& model, const Slice& s, std::size_t au,
                                     ThresholdScale scale) {
    const PathLoss& ell = model.ell();
    ScaleFn T{&model.g(), scale == ThresholdScale::RawSir};
    const Vec2 pu = s.pos[au];

    std::array<double, 4> v{};
    v[ChUpDir] = s.updir[au];
    v[ChDownDir] = s.dndir[au];

    double up = s.updir[au];
    for (std::size_t b = 0; b < s.pos.size(); ++b) {
        if (s.updir[b] <= up) continue;
        double hop1 = T(ratio_or_inf(ell.eval_sq(dist_sq(pu, s.pos[b])), s.iu[b]));
        up = std::max(up, std::min(hop1, s.updir[b]));
    }
    v[ChUp] = up;

    double down = s.dndir[au];
    for (std::size_t b = 0; b < s.pos.size(); ++b) {
        if (s.dndir[b] <= down) continue;
        double hop2 = T(ratio_or_inf(ell.eval_sq(dist_sq(s.pos[b], pu)), s.iu[au]));
        down = std::max(down, std::min(s.dndir[b], hop2));
    }
    v[ChDown] = down;
    return v;
}

} // namespace

int tau_ac(std::span<const double> gamma, double a, double c, double dt) {
    double bad = 0.0;
    for (double g : gamma)
        if (g < c) bad += dt;
    return bad > a ? 1 : 0;
}

namespace {

double channel_value(const Model& model, Vec2 xt, AtomView atoms, Channel kind) {
    const Vec2 o{};
    switch (kind) {
        case ChUp: return model.qos_relayed_uplink(xt, atoms);
        case ChUpDir: return model.qos_direct(xt, o, atoms);
        case ChDown: return model.qos_relayed_downlink(xt, atoms);
        default: return model.qos_direct(o, xt, atoms);
    }
}

} // namespace

std::vector<double> qos_path(const Model& model, const Trajectory& x, const TrajectoryConfig& cfg,
                             const TimeGrid& time, Channel kind) {
    std::vector<double> out(time.count());
    std::vector<Vec2> pos(cfg.users.size());
    std::vector<double> w(cfg.users.size(), 1.0 / cfg.lambda);
    for (std::size_t t = 0; t < time.count(); ++t) {
        double ti = time.instant(t);
        for (std::size_t k = 0; k < cfg.users.size(); ++k) pos[k] = cfg.users[k].at(ti);
        out[t] = channel_value(model, x.at(ti), AtomView{pos, w}, kind);
    }
    return out;
}

std::vector<double> qos_path(const Model& model, const Trajectory& x, const PathMeasure& nu,
                             Channel kind) {
    const TimeGrid& time = nu.grid.time;
    std::vector<double> out(time.count());
    for (std::size_t t = 0; t < time.count(); ++t) {
        SpatialMeasure slice = time_slice(nu, t);
        double ti = time.instant(t);
        Vec2 xt = x.at(ti);
        const Vec2 o{};
        switch (kind) {
            case ChUp: out[t] = model.qos_relayed_uplink(xt, slice); break;
            case ChUpDir: out[t] = model.qos_direct(xt, o, slice); break;
            case ChDown: out[t] = model.qos_relayed_downlink(xt, slice); break;
            default: out[t] = model.qos_direct(o, xt, slice); break;
        }
    }
    return out;
}

std::vector<std::array<double, 4>> bad_time_per_path(const Model& model, const PathMeasure& nu,
                                                     const std::array<double, 4>& c,
                                                     ThresholdScale scale, bool strict_less) {
    std::vector<Slice> slices = build_slices(model, nu, scale);
    const double dt = nu.grid.time.dt();

    std::vector<std::array<double, 4>> out;
    out.reserve(nu.mass.size());
    for (const auto& [u, w] : nu.mass) {
        std::array<double, 4> bad{};
        if (w > 0.0) {
            for (std::size_t t = 0; t < slices.size(); ++t) {
                std::size_t au = slices[t].find(u[t]);
                std::array<double, 4> v = path_values_at(model, slices[t], au, scale);
                for (int i = 0; i < 4; ++i) {
                    bool below = strict_less ? (v[i] < c[i]) : (v[i] <= c[i]);
                    if (below) bad[i] += dt;
                }
            }
        }
        out.push_back(bad);
    }
    return out;
}

std::array<double, 4> channel_masses(const Model& model, const PathMeasure& nu,
                                     const FrustrationSpec& spec) {
    std::array<double, 4> c{};
    for (int i = 0; i < 4; ++i) c[i] = spec.ch[i].enabled ? spec.ch[i].c : -kInf;
    auto bad = bad_time_per_path(model, nu, c, spec.scale, /*strict_less=*/true);

    std::array<double, 4> m{};
    std::size_t idx = 0;
    for (const auto& [u, w] : nu.mass) {
        for (int i = 0; i < 4; ++i)
            if (spec.ch[i].enabled && bad[idx][i] > spec.ch[i].a) m[i] += w;
        ++idx;
    }
    return m;
}

std::array<double, 4> worst_qos_duration(const Model& model, const std::array<double, 4>& c,
                                         const PathMeasure& nu, ThresholdScale scale) {
    auto bad = bad_time_per_path(model, nu, c, scale, /*strict_less=*/false);
    std::array<double, 4> w{};
    std::size_t idx = 0;
    for (const auto& [u, m] : nu.mass) {
        if (m > 0.0)
            for (int i = 0; i < 4; ++i) w[i] = std::max(w[i], bad[idx][i]);
        ++idx;
    }
    return w;
}

std::array<double, 4> worst_qos_duration_eps(const Model& model, const std::array<double, 4>& c,
                                             const PathMeasure& nu, double eps,
                                             ThresholdScale scale) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    auto bad = bad_time_per_path(model, nu, c, scale, /*strict_less=*/false);
    std::array<double, 4> w{};
    std::size_t idx = 0;
    for (const auto& [u, m] : nu.mass) {
        double damp = std::min(1.0, m / eps);
        for (int i = 0; i < 4; ++i) w[i] = std::max(w[i], bad[idx][i] * damp);
        ++idx;
    }
    return w;
}

std::array<double, 4> channel_masses(const Model& model, const PointConfig& cfg,
                                     const FrustrationSpec& spec) {
    QosTable tab = qos_table(model, cfg, spec.needed(), spec.scale);
    std::array<double, 4> m{};
    for (int i = 0; i < 4; ++i) {
        if (!spec.ch[i].enabled) continue;
        const auto& v = tab.ch[i];
        std::size_t cnt = 0;
        for (double x : v)
            if (x < spec.ch[i].c) ++cnt;
        m[i] = static_cast<double>(cnt) / cfg.lambda;
    }
    return m;
}

std::vector<std::uint8_t> frustration_flags(const Model& model, const PointConfig& cfg,
                                            const FrustrationSpec& spec) {
    QosTable tab = qos_table(model, cfg, spec.needed(), spec.scale);
    std::vector<std::uint8_t> flags(cfg.points.size(), 0);
    for (int i = 0; i < 4; ++i) {
        if (!spec.ch[i].enabled) continue;
        for (std::size_t k = 0; k < flags.size(); ++k)
            if (tab.ch[i][k] < spec.ch[i].c) flags[k] |= static_cast<std::uint8_t>(1u << i);
    }
    return flags;
}

FrustratedMeasures frustrated_measures(const Model& model, const PointConfig& cfg,
                                       const FrustrationSpec& spec, const PathGrid& grid) {
    FrustratedMeasures fm;
    for (auto& m : fm.m) m.grid = grid;
    auto flags = frustration_flags(model, cfg, spec);
    const double w = 1.0 / cfg.lambda;
    for (std::size_t k = 0; k < cfg.points.size(); ++k) {
        if (!flags[k]) continue;
        Vec2 p = cfg.points[k];
        DiscretePath u(grid.time.count(), static_cast<std::int32_t>(grid.spatial->snap(p)));
        for (int i = 0; i < 4; ++i)
            if (flags[k] & (1u << i)) fm.m[i].add(u, w);
    }
    return fm;
}

FrustratedMeasures frustrated_measures(const Model& model, const TrajectoryConfig& cfg,
                                       const FrustrationSpec& spec, const PathGrid& grid) {
    FrustratedMeasures fm;
    for (auto& m : fm.m) m.grid = grid;
    const std::size_t n = cfg.users.size();
    const std::size_t steps = grid.time.count();
    const double dt = grid.time.dt();

    // channel values per instant for every user, against the empirical measure
    std::array<std::vector<std::vector<double>>, 4> vals;
    for (int i = 0; i < 4; ++i)
        if (spec.ch[i].enabled) vals[i].resize(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        PointConfig slice;
        slice.lambda = cfg.lambda;
        slice.points.reserve(n);
        for (const auto& x : cfg.users) slice.points.push_back(x.at(grid.time.instant(t)));
        QosTable tab = qos_table(model, slice, spec.needed(), spec.scale);
        for (int i = 0; i < 4; ++i)
            if (spec.ch[i].enabled) vals[i][t] = std::move(tab.ch[i]);
    }

    const double w = 1.0 / cfg.lambda;
    std::vector<double> gamma(steps);
    for (std::size_t k = 0; k < n; ++k) {
        DiscretePath u;
        for (int i = 0; i < 4; ++i) {
            if (!spec.ch[i].enabled) continue;
            for (std::size_t t = 0; t < steps; ++t) gamma[t] = vals[i][t][k];
            if (tau_ac(gamma, spec.ch[i].a, spec.ch[i].c, dt)) {
                if (u.empty()) u = discretize_path(cfg.users[k], grid);
                fm.m[i].add(u, w);
            }
        }
    }
    return fm;
}

std::array<double, 4> channel_masses(const Model& model, const TrajectoryConfig& cfg,
                                     const FrustrationSpec& spec, const TimeGrid& time) {
    const std::size_t n = cfg.users.size();
    const std::size_t steps = time.count();
    const double dt = time.dt();

    std::array<std::vector<std::vector<double>>, 4> vals;
    for (int i = 0; i < 4; ++i)
        if (spec.ch[i].enabled) vals[i].resize(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        PointConfig slice;
        slice.lambda = cfg.lambda;
        slice.points.reserve(n);
        for (const auto& x : cfg.users) slice.points.push_back(x.at(time.instant(t)));
        QosTable tab = qos_table(model, slice, spec.needed(), spec.scale);
        for (int i = 0; i < 4; ++i)
            if (spec.ch[i].enabled) vals[i][t] = std::move(tab.ch[i]);
    }

    std::array<double, 4> m{};
    std::vector<double> gamma(steps);
    for (std::size_t k = 0; k < n; ++k) {
        for (int i = 0; i < 4; ++i) {
            if (!spec.ch[i].enabled) continue;
            for (std::size_t t = 0; t < steps; ++t) gamma[t] = vals[i][t][k];
            if (tau_ac(gamma, spec.ch[i].a, spec.ch[i].c, dt)) m[i] += 1.0 / cfg.lambda;
        }
    }
    return m;
}

int event_indicator(const std::array<double, 4>& masses, const FrustrationSpec& spec) {
    for (int i = 0; i < 4; ++i) {
        if (!spec.ch[i].enabled || !spec.ch[i].b) continue;
        if (!(masses[i] > *spec.ch[i].b)) return 0;
    }
    return 1;
}

int event_indicator(const FrustratedMeasures& fm, const FrustrationSpec& spec) {
    std::array<double, 4> masses{};
    for (int i = 0; i < 4; ++i) masses[i] = fm.m[i].total();
    return event_indicator(masses, spec);
}

} // namespace relnet
