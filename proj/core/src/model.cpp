#include "relnet/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace relnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double ratio_or_inf(double num, double den) {
    return den > 0.0 ? num / den : kInf;
}

} // namespace

Model::Model(Window w, PathLoss ell, QosMap g, bool bs_interference)
    : window_(w), ell_(ell), g_(g), bs_(bs_interference) {
    PathLossExtrema ex = certify_extrema(ell_, window_.diameter());
    ell_min_ = ex.ell_min;
    ell_max_ = ex.ell_max;
    if (!(ell_min_ > 0.0)) throw std::invalid_argument("path loss must stay positive on the window");
    beta_o_ = std::min(1.0, ell_min_ / (g_.rho_plus() * ell_max_));
}

double Model::interference(Vec2 eta, const PointConfig& cfg) const {
    double s = 0.0;
    for (const Vec2& p : cfg.points) s += ell_.eval_sq(dist_sq(p, eta));
    if (bs_) s += ell_.eval_sq(norm_sq(eta));
    return s;
}

double Model::interference(Vec2 eta, const SpatialMeasure& nu) const {
    const auto& centers = nu.layout->centers();
    double s = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i)
        if (nu.mass[i] > 0.0) s += nu.mass[i] * ell_.eval_sq(dist_sq(centers[i], eta));
    return s;
}

double Model::interference(Vec2 eta, AtomView nu) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nu.pos.size(); ++i)
        if (nu.mass[i] > 0.0) s += nu.mass[i] * ell_.eval_sq(dist_sq(nu.pos[i], eta));
    return s;
}

double Model::sir(Vec2 xi, Vec2 eta, const PointConfig& cfg) const {
    return ratio_or_inf(ell_.eval_sq(dist_sq(xi, eta)) * cfg.lambda, interference(eta, cfg));
}

double Model::sir(Vec2 xi, Vec2 eta, const SpatialMeasure& nu) const {
    return ratio_or_inf(ell_.eval_sq(dist_sq(xi, eta)), interference(eta, nu));
}

double Model::sir(Vec2 xi, Vec2 eta, AtomView nu) const {
    return ratio_or_inf(ell_.eval_sq(dist_sq(xi, eta)), interference(eta, nu));
}

double Model::qos_direct(Vec2 xi, Vec2 eta, const PointConfig& cfg) const {
    return g_(sir(xi, eta, cfg));
}
double Model::qos_direct(Vec2 xi, Vec2 eta, const SpatialMeasure& nu) const {
    return g_(sir(xi, eta, nu));
}
double Model::qos_direct(Vec2 xi, Vec2 eta, AtomView nu) const {
    return g_(sir(xi, eta, nu));
}

template <typename Nu>
static double relay_link(const Model& m, Vec2 xi, Vec2 zeta, Vec2 eta, const Nu& nu) {
    return std::min(m.qos_direct(xi, zeta, nu), m.qos_direct(zeta, eta, nu));
}

double Model::qos_relay_link(Vec2 xi, Vec2 zeta, Vec2 eta, const PointConfig& cfg) const {
    return relay_link(*this, xi, zeta, eta, cfg);
}
double Model::qos_relay_link(Vec2 xi, Vec2 zeta, Vec2 eta, const SpatialMeasure& nu) const {
    return relay_link(*this, xi, zeta, eta, nu);
}
double Model::qos_relay_link(Vec2 xi, Vec2 zeta, Vec2 eta, AtomView nu) const {
    return relay_link(*this, xi, zeta, eta, nu);
}

double Model::qos_relayed_uplink(Vec2 xi, const PointConfig& cfg) const {
    const Vec2 o{};
    double io = interference(o, cfg);
    double best = g_(ratio_or_inf(ell_.eval_sq(dist_sq(xi, o)) * cfg.lambda, io));
    for (const Vec2& z : cfg.points) {
        double hop2 = g_(ratio_or_inf(ell_.eval_sq(norm_sq(z)) * cfg.lambda, io));
        if (hop2 <= best) continue;
        double hop1 = g_(sir(xi, z, cfg));
        best = std::max(best, std::min(hop1, hop2));
    }
    return best;
}

template <typename AtomsLike>
static double relayed_uplink_atoms(const Model& m, const QosMap& g, Vec2 xi, AtomsLike nu) {
    const Vec2 o{};
    double io = m.interference(o, nu);
    double best = m.qos_direct(xi, o, nu);
    for (std::size_t j = 0; j < nu.pos.size(); ++j) {
        if (!(nu.mass[j] > 0.0)) continue;
        Vec2 z = nu.pos[j];
        double hop2 = g(io > 0.0 ? m.ell().eval_sq(norm_sq(z)) / io : kInf);
        if (hop2 <= best) continue;
        double hop1 = m.qos_direct(xi, z, nu);
        best = std::max(best, std::min(hop1, hop2));
    }
    return best;
}

double Model::qos_relayed_uplink(Vec2 xi, const SpatialMeasure& nu) const {
    return relayed_uplink_atoms(*this, g_, xi, AtomView{nu.layout->centers(), nu.mass});
}
double Model::qos_relayed_uplink(Vec2 xi, AtomView nu) const {
    return relayed_uplink_atoms(*this, g_, xi, nu);
}

double Model::qos_relayed_downlink(Vec2 xi, const PointConfig& cfg) const {
    const Vec2 o{};
    double ix = interference(xi, cfg);
    double best = g_(ratio_or_inf(ell_.eval_sq(norm_sq(xi)) * cfg.lambda, ix));
    for (const Vec2& z : cfg.points) {
        double hop2 = g_(ratio_or_inf(ell_.eval_sq(dist_sq(z, xi)) * cfg.lambda, ix));
        if (hop2 <= best) continue;
        double hop1 = qos_direct(o, z, cfg);
        best = std::max(best, std::min(hop1, hop2));
    }
    return best;
}

template <typename AtomsLike>
static double relayed_downlink_atoms(const Model& m, const QosMap& g, Vec2 xi, AtomsLike nu) {
    const Vec2 o{};
    double ix = m.interference(xi, nu);
    double best = g(ix > 0.0 ? m.ell().eval_sq(norm_sq(xi)) / ix : kInf);
    for (std::size_t j = 0; j < nu.pos.size(); ++j) {
        if (!(nu.mass[j] > 0.0)) continue;
        Vec2 z = nu.pos[j];
        double hop2 = g(ix > 0.0 ? m.ell().eval_sq(dist_sq(z, xi)) / ix : kInf);
        if (hop2 <= best) continue;
        double hop1 = m.qos_direct(o, z, nu);
        best = std::max(best, std::min(hop1, hop2));
    }
    return best;
}

double Model::qos_relayed_downlink(Vec2 xi, const SpatialMeasure& nu) const {
    return relayed_downlink_atoms(*this, g_, xi, AtomView{nu.layout->centers(), nu.mass});
}
double Model::qos_relayed_downlink(Vec2 xi, AtomView nu) const {
    return relayed_downlink_atoms(*this, g_, xi, nu);
}

namespace {

struct ScaleFn {
    const QosMap* g;
    bool raw;
    double operator()(double sir) const { return raw ? sir : (*g)(sir); }
    double placeholder() const { return raw ? kInf : g->c_plus(); }
};

// Descending order by value; ties by index for determinism.
std::vector<std::uint32_t> order_desc(const std::vector<double>& v) {
    std::vector<std::uint32_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::stable_sort(idx.begin(), idx.end(),
                     [&v](std::uint32_t a, std::uint32_t b) { return v[a] > v[b]; });
    return idx;
}

} // namespace

QosTable qos_table(const Model& model, const PointConfig& cfg, std::array<bool, 4> need,
                   ThresholdScale scale) {
    const std::size_t n = cfg.points.size();
    const PathLoss& ell = model.ell();
    const double lam = cfg.lambda;
    ScaleFn T{&model.g(), scale == ThresholdScale::RawSir};

    QosTable out;
    std::vector<double> ell0(n);
    double io = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ell0[i] = ell.eval_sq(norm_sq(cfg.points[i]));
        io += ell0[i];
    }
    if (model.bs_interference()) io += ell.eval_sq(0.0);

    auto& updir = out.ch[ChUpDir];
    updir.resize(n);
    for (std::size_t i = 0; i < n; ++i) updir[i] = T(ratio_or_inf(ell0[i] * lam, io));

    const bool pairwise = need[ChUp] || need[ChDown] || need[ChDownDir];
    if (!pairwise) return out;

    // Interference at every user (one symmetric pass), then relays are a
    // pruned scan in decreasing hop-2 quality.
    std::vector<double> iu(n, ell.eval_sq(0.0)); // own signal
    const Vec2* pts = cfg.points.data();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        const Vec2 pi = pts[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            double e = ell.eval_sq(dist_sq(pi, pts[j]));
            acc += e;
            iu[j] += e;
        }
        iu[i] += acc;
        if (model.bs_interference()) iu[i] += ell0[i];
    }

    auto& downdir = out.ch[ChDownDir];
    downdir.resize(n);
    for (std::size_t i = 0; i < n; ++i) downdir[i] = T(ratio_or_inf(ell0[i] * lam, iu[i]));

    if (need[ChUp]) {
        auto& up = out.ch[ChUp];
        up.resize(n);
        std::vector<std::uint32_t> ord = order_desc(updir);
        for (std::size_t i = 0; i < n; ++i) {
            double best = updir[i];
            const Vec2 pi = pts[i];
            for (std::uint32_t j : ord) {
                if (updir[j] <= best) break;
                double hop1 = T(ratio_or_inf(ell.eval_sq(dist_sq(pi, pts[j])) * lam, iu[j]));
                best = std::max(best, std::min(hop1, updir[j]));
            }
            up[i] = best;
        }
    }
    if (need[ChDown]) {
        auto& down = out.ch[ChDown];
        down.resize(n);
        std::vector<std::uint32_t> ord = order_desc(downdir);
        for (std::size_t i = 0; i < n; ++i) {
            double best = downdir[i];
            const Vec2 pi = pts[i];
            for (std::uint32_t j : ord) {
                if (downdir[j] <= best) break;
                double hop2 = T(ratio_or_inf(ell.eval_sq(dist_sq(pi, pts[j])) * lam, iu[i]));
                best = std::max(best, std::min(downdir[j], hop2));
            }
            down[i] = best;
        }
    }
    return out;
}

QosTable qos_table(const Model& model, const SpatialMeasure& nu, std::array<bool, 4> need,
                   ThresholdScale scale) {
    const auto& centers = nu.layout->centers();
    const std::size_t n = centers.size();
    const PathLoss& ell = model.ell();
    ScaleFn T{&model.g(), scale == ThresholdScale::RawSir};

    std::vector<std::uint32_t> occ;
    occ.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        if (nu.mass[i] > 0.0) occ.push_back(static_cast<std::uint32_t>(i));

    QosTable out;
    for (int c = 0; c < 4; ++c)
        if (need[c] || c == ChUpDir || c == ChDownDir)
            out.ch[c].assign(n, T.placeholder());

    std::vector<double> ell0(occ.size());
    double io = 0.0;
    for (std::size_t k = 0; k < occ.size(); ++k) {
        ell0[k] = ell.eval_sq(norm_sq(centers[occ[k]]));
        io += nu.mass[occ[k]] * ell0[k];
    }
    for (std::size_t k = 0; k < occ.size(); ++k)
        out.ch[ChUpDir][occ[k]] = T(ratio_or_inf(ell0[k], io));

    const bool pairwise = need[ChUp] || need[ChDown] || need[ChDownDir];
    if (!pairwise) return out;

    std::vector<double> iu(occ.size(), 0.0);
    for (std::size_t a = 0; a < occ.size(); ++a) {
        const Vec2 ca = centers[occ[a]];
        double s = 0.0;
        for (std::size_t b = 0; b < occ.size(); ++b)
            s += nu.mass[occ[b]] * ell.eval_sq(dist_sq(ca, centers[occ[b]]));
        iu[a] = s;
    }
    for (std::size_t k = 0; k < occ.size(); ++k)
        out.ch[ChDownDir][occ[k]] = T(ratio_or_inf(ell0[k], iu[k]));

    if (need[ChUp]) {
        for (std::size_t a = 0; a < occ.size(); ++a) {
            double best = out.ch[ChUpDir][occ[a]];
            const Vec2 ca = centers[occ[a]];
            for (std::size_t b = 0; b < occ.size(); ++b) {
                double hop2 = out.ch[ChUpDir][occ[b]];
                if (hop2 <= best) continue;
                double hop1 = T(ratio_or_inf(ell.eval_sq(dist_sq(ca, centers[occ[b]])), iu[b]));
                best = std::max(best, std::min(hop1, hop2));
            }
            out.ch[ChUp][occ[a]] = best;
        }
    }
    if (need[ChDown]) {
        for (std::size_t a = 0; a < occ.size(); ++a) {
            double best = out.ch[ChDownDir][occ[a]];
            const Vec2 ca = centers[occ[a]];
            for (std::size_t b = 0; b < occ.size(); ++b) {
                double hop1 = out.ch[ChDownDir][occ[b]];
                if (hop1 <= best) continue;
                double hop2 = T(ratio_or_inf(ell.eval_sq(dist_sq(ca, centers[occ[b]])), iu[a]));
                best = std::max(best, std::min(hop1, hop2));
            }
            out.ch[ChDown][occ[a]] = best;
        }
    }
    return out;
}

} // namespace relnet
