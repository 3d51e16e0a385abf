#include "relnet/rate_minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "relnet/entropy.hpp"
#include "relnet/rng.hpp"

namespace relnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double ratio_or_inf(double num, double den) {
    return den > 0.0 ? num / den : kInf;
}

// Objective pieces shared by every restart. Masses are evaluated either by a
// specialized static routine (single instant) or through the generic path
// machinery.
class Problem {
public:
    Problem(const Model& model, const PathMeasure& mu, const FrustrationSpec& spec)
        : model_(model), mu_grid_(mu.grid), spec_(spec) {
        for (const auto& [u, w] : mu.mass) {
            if (w <= 0.0) continue;
            support_.push_back(u);
            mu_.push_back(w);
        }
        static_mode_ = mu.grid.time.count() == 1;
        if (static_mode_) {
            centers_.reserve(support_.size());
            for (const auto& u : support_)
                centers_.push_back(mu.grid.spatial->center(static_cast<std::size_t>(u[0])));
        }
        for (int i = 0; i < 4; ++i) {
            if (spec_.ch[i].enabled && spec_.ch[i].b) {
                active_.push_back(i);
                eps_[i] = 1e-6 * std::max(1.0, std::abs(*spec_.ch[i].b));
            }
        }
    }

    std::size_t dim() const { return support_.size(); }
    const std::vector<double>& mu() const { return mu_; }
    const std::vector<int>& active() const { return active_; }
    double eps(int i) const { return eps_[i]; }

    double entropy(const std::vector<double>& x) const {
        double h = 0.0;
        for (std::size_t u = 0; u < x.size(); ++u) h += h_cell(x[u], mu_[u]);
        return h;
    }

    std::array<double, 4> masses(const std::vector<double>& x) const {
        return static_mode_ ? masses_static(x) : masses_mobile(x);
    }

    bool static_mode() const { return static_mode_; }
    /// Path loss from the cell to the origin (1 in mobile mode).
    double origin_weight(std::size_t u) const {
        return static_mode_ ? model_.ell().eval_sq(norm_sq(centers_[u])) : 1.0;
    }

    double violation(const std::array<double, 4>& m) const {
        double v = 0.0;
        for (int i : active_) v = std::max(v, *spec_.ch[i].b + eps_[i] - m[i]);
        return std::max(v, 0.0);
    }

    double penalty(const std::array<double, 4>& m, double P) const {
        double s = 0.0;
        for (int i : active_) {
            double viol = std::max(0.0, *spec_.ch[i].b + eps_[i] - m[i]);
            s += P * viol * viol;
        }
        return s;
    }

    bool feasible(const std::array<double, 4>& m) const {
        for (int i : active_)
            if (!(m[i] >= *spec_.ch[i].b + eps_[i])) return false;
        return true;
    }

    PathMeasure to_measure(const std::vector<double>& x) const {
        PathMeasure nu;
        nu.grid = mu_grid_;
        for (std::size_t u = 0; u < x.size(); ++u)
            if (x[u] > 0.0) nu.mass[support_[u]] = x[u];
        return nu;
    }

private:
    std::array<double, 4> masses_static(const std::vector<double>& x) const {
        const PathLoss& ell = model_.ell();
        const bool raw = spec_.scale == ThresholdScale::RawSir;
        const QosMap& g = model_.g();
        auto T = [&](double s) { return raw ? s : g(s); };
        const std::size_t n = x.size();

        occ_.clear();
        for (std::size_t u = 0; u < n; ++u)
            if (x[u] > 0.0) occ_.push_back(u);

        double io = 0.0;
        for (std::size_t k : occ_) io += x[k] * ell.eval_sq(norm_sq(centers_[k]));

        iu_.assign(occ_.size(), 0.0);
        const bool pairwise = spec_.ch[ChUp].enabled || spec_.ch[ChDown].enabled ||
                              spec_.ch[ChDownDir].enabled;
        if (pairwise) {
            for (std::size_t a = 0; a < occ_.size(); ++a) {
                double s = 0.0;
                const Vec2 ca = centers_[occ_[a]];
                for (std::size_t b = 0; b < occ_.size(); ++b)
                    s += x[occ_[b]] * ell.eval_sq(dist_sq(ca, centers_[occ_[b]]));
                iu_[a] = s;
            }
        }

        updir_.assign(occ_.size(), 0.0);
        dndir_.assign(occ_.size(), 0.0);
        for (std::size_t a = 0; a < occ_.size(); ++a) {
            double e0 = ell.eval_sq(norm_sq(centers_[occ_[a]]));
            updir_[a] = T(ratio_or_inf(e0, io));
            if (pairwise) dndir_[a] = T(ratio_or_inf(e0, iu_[a]));
        }

        std::array<double, 4> m{};
        for (std::size_t a = 0; a < occ_.size(); ++a) {
            const Vec2 ca = centers_[occ_[a]];
            const double xa = x[occ_[a]];
            if (spec_.ch[ChUpDir].enabled && frustrated(ChUpDir, updir_[a])) m[ChUpDir] += xa;
            if (spec_.ch[ChDownDir].enabled && frustrated(ChDownDir, dndir_[a])) m[ChDownDir] += xa;
            if (spec_.ch[ChUp].enabled) {
                double best = updir_[a];
                for (std::size_t b = 0; b < occ_.size() && best < c_plus_bound(); ++b) {
                    if (updir_[b] <= best) continue;
                    double hop1 =
                        T(ratio_or_inf(ell.eval_sq(dist_sq(ca, centers_[occ_[b]])), iu_[b]));
                    best = std::max(best, std::min(hop1, updir_[b]));
                }
                if (frustrated(ChUp, best)) m[ChUp] += xa;
            }
            if (spec_.ch[ChDown].enabled) {
                double best = dndir_[a];
                for (std::size_t b = 0; b < occ_.size() && best < c_plus_bound(); ++b) {
                    if (dndir_[b] <= best) continue;
                    double hop2 =
                        T(ratio_or_inf(ell.eval_sq(dist_sq(ca, centers_[occ_[b]])), iu_[a]));
                    best = std::max(best, std::min(dndir_[b], hop2));
                }
                if (frustrated(ChDown, best)) m[ChDown] += xa;
            }
        }
        return m;
    }

    std::array<double, 4> masses_mobile(const std::vector<double>& x) const {
        return channel_masses(model_, to_measure(x), spec_);
    }

    bool frustrated(int i, double value) const {
        // static tau: time below c is dt * indicator, compared against a
        double bad = (value < spec_.ch[i].c) ? mu_grid_.time.dt() : 0.0;
        return bad > spec_.ch[i].a;
    }

    double c_plus_bound() const {
        return spec_.scale == ThresholdScale::RawSir ? kInf : model_.g().c_plus();
    }

    const Model& model_;
    PathGrid mu_grid_;
    FrustrationSpec spec_;
    std::vector<DiscretePath> support_;
    std::vector<double> mu_;
    std::vector<Vec2> centers_;
    std::vector<int> active_;
    std::array<double, 4> eps_{};
    bool static_mode_ = false;
    // scratch (single-threaded per Problem instance; restarts get copies)
    mutable std::vector<std::size_t> occ_;
    mutable std::vector<double> iu_, updir_, dndir_;
};

struct Candidate {
    std::vector<double> x;
    double entropy = kInf;
    std::array<double, 4> masses{};
    bool feasible = false;
    bool stable = false;
};

// Smallest scale t >= 1 making t*x feasible (masses increase with scaling).
bool feasibilize(const Problem& pb, std::vector<double> x, Candidate& out) {
    auto scaled = [&](double t) {
        std::vector<double> y = x;
        for (double& v : y) v *= t;
        return y;
    };
    auto feas_at = [&](double t) { return pb.feasible(pb.masses(scaled(t))); };

    double hi = 1.0;
    if (!feas_at(1.0)) {
        bool found = false;
        for (hi = 1.25; hi < 1e12; hi *= 2.0) {
            if (feas_at(hi)) {
                found = true;
                break;
            }
        }
        if (!found) return false;
        double lo = 1.0;
        for (int it = 0; it < 70; ++it) {
            double mid = 0.5 * (lo + hi);
            (feas_at(mid) ? hi : lo) = mid;
        }
    }
    out.x = scaled(hi);
    out.masses = pb.masses(out.x);
    out.feasible = pb.feasible(out.masses);
    out.entropy = pb.entropy(out.x);
    return out.feasible;
}

// Compass/exchange pattern search on the exact objective over the feasible
// set; slides along constraint boundaries the projected gradient cannot
// follow. Moves: single coordinates, mass-preserving pair exchanges, and
// origin-interference-preserving pair exchanges.
void polish(const Problem& pb, Candidate& cand) {
    if (!cand.feasible || cand.x.empty()) return;
    const std::size_t n = cand.x.size();
    double scale = 0.0;
    for (double v : cand.x) scale = std::max(scale, v);
    double delta = 0.25 * std::max(scale, 1.0);

    std::vector<double> y = cand.x;
    auto try_move = [&](const std::vector<double>& cur, std::vector<double>& out) -> bool {
        auto m = pb.masses(out);
        if (!pb.feasible(m)) return false;
        double h = pb.entropy(out);
        if (h < cand.entropy - 1e-15) {
            cand.x = out;
            cand.entropy = h;
            cand.masses = m;
            (void)cur;
            return true;
        }
        return false;
    };

    while (delta > 1e-9 * std::max(scale, 1.0)) {
        bool improved = false;
        for (std::size_t u = 0; u < n; ++u) {
            for (double sgn : {-1.0, 1.0}) {
                y = cand.x;
                y[u] = std::max(0.0, y[u] + sgn * delta);
                if (y[u] != cand.x[u] && try_move(cand.x, y)) improved = true;
            }
        }
        for (std::size_t u = 0; u < n && n > 1; ++u) {
            for (std::size_t v = 0; v < n; ++v) {
                if (v == u || cand.x[u] <= 0.0) continue;
                double du = std::min(delta, cand.x[u]);
                // mass-preserving swap
                y = cand.x;
                y[u] -= du;
                y[v] += du;
                if (try_move(cand.x, y)) improved = true;
                // origin-interference-preserving swap
                du = std::min(delta, cand.x[u]);
                if (du <= 0.0) continue;
                double wu = pb.origin_weight(u), wv = pb.origin_weight(v);
                if (wv > 0.0) {
                    y = cand.x;
                    y[u] -= du;
                    y[v] += du * wu / wv;
                    if (try_move(cand.x, y)) improved = true;
                }
            }
        }
        if (!improved) delta *= 0.5;
    }
}

Candidate run_restart(const Problem& pb, const FrustrationSpec& spec, const MinimizeOptions& opts,
                      int restart_idx, long long zero_pattern) {
    const std::size_t n = pb.dim();
    SplitMix64 rng(run_seed(opts.seed, 0x5851F42D4C957F2DULL + restart_idx));

    // perturbed start mu * exp(noise); later restarts widen the noise and may
    // zero a subset to explore relay-removal patterns (exhaustive for small
    // supports via zero_pattern, random otherwise)
    std::vector<double> x(pb.mu());
    if (zero_pattern >= 0) {
        for (std::size_t u = 0; u < n; ++u)
            if (zero_pattern & (1LL << u)) x[u] = 0.0;
    } else if (restart_idx > 0) {
        double sigma = opts.noise * (1.0 + 0.25 * restart_idx);
        for (double& v : x) v *= std::exp(sigma * rng.normal());
        if (restart_idx >= 3 && restart_idx % 2 == 1) {
            for (double& v : x)
                if (rng.uniform01() < 0.35) v = 0.0;
        }
    }

    // inflate toward feasibility (masses are monotone under scaling)
    for (int it = 0; it < 90 && !pb.feasible(pb.masses(x)); ++it)
        for (double& v : x) v *= 1.3;

    Candidate best;
    {
        Candidate c;
        if (feasibilize(pb, x, c)) best = c;
    }

    std::vector<double> grad(n), probe(n), hist;
    double P = opts.penalty0;
    double step0 = 0.1;
    bool stable = false;

    auto objective = [&](const std::vector<double>& y) {
        return pb.entropy(y) + pb.penalty(pb.masses(y), P);
    };

    for (int level = 0; level < opts.penalty_levels; ++level) {
        double f = objective(x);
        hist.clear();
        for (int iter = 0; iter < opts.max_inner; ++iter) {
            // entropy gradient (smoothed at zero), penalty by central FD
            for (std::size_t u = 0; u < n; ++u) {
                double xu = std::max(x[u], 1e-12 * std::max(pb.mu()[u], 1e-12));
                grad[u] = std::log(xu / pb.mu()[u]);
            }
            std::array<double, 4> m0 = pb.masses(x);
            double pen0 = pb.penalty(m0, P);
            probe = x;
            for (std::size_t u = 0; u < n; ++u) {
                double h = std::max(1e-9, 1e-6 * x[u]);
                probe[u] = x[u] + h;
                double pp = pb.penalty(pb.masses(probe), P);
                double pm = pen0;
                double denom = h;
                if (x[u] - h >= 0.0) {
                    probe[u] = x[u] - h;
                    pm = pb.penalty(pb.masses(probe), P);
                    denom = 2.0 * h;
                }
                probe[u] = x[u];
                grad[u] += (pp - pm) / denom;
            }

            // projected backtracking step
            double gnorm2 = 0.0;
            for (double g : grad) gnorm2 += g * g;
            if (gnorm2 == 0.0) break;
            double t = step0;
            bool accepted = false;
            for (int bt = 0; bt < 40; ++bt) {
                double moved2 = 0.0;
                for (std::size_t u = 0; u < n; ++u) {
                    probe[u] = std::max(0.0, x[u] - t * grad[u]);
                    double d = probe[u] - x[u];
                    moved2 += d * d;
                }
                if (moved2 == 0.0) break;
                double fy = objective(probe);
                if (fy <= f - 1e-4 * moved2 / std::max(t, 1e-300)) {
                    x = probe;
                    f = fy;
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            step0 = accepted ? std::min(1.0, t * 1.5) : std::max(1e-12, step0 * 0.5);

            hist.push_back(f);
            if (hist.size() > 50) {
                double prev = hist[hist.size() - 51];
                if (std::abs(prev - f) <= 1e-8 * std::max(1.0, std::abs(f))) {
                    stable = true;
                    break;
                }
            }
            if (!accepted && step0 <= 1e-11) {
                // frozen iterate: the objective cannot change any further
                stable = true;
                break;
            }
        }

        Candidate c;
        if (feasibilize(pb, x, c) && c.entropy < best.entropy) {
            best = c;
            best.stable = stable;
        }
        P *= 6.0;
    }
    best.stable = best.stable || stable;
    polish(pb, best);
    return best;
}

MinimizerResult assemble(const Problem& pb, const FrustrationSpec& spec, const Candidate& best,
                         int restarts) {
    MinimizerResult res;
    res.restarts_used = restarts;
    res.eps_feas = 0.0;
    for (int i : pb.active()) res.eps_feas = std::max(res.eps_feas, pb.eps(i));
    res.measure = pb.to_measure(best.x);
    res.entropy = best.entropy;
    res.channel_mass = best.masses;
    res.feasible = best.feasible;
    res.converged = best.feasible && best.stable;
    double r = -kInf;
    for (int i : pb.active()) r = std::max(r, *spec.ch[i].b + pb.eps(i) - best.masses[i]);
    res.constraint_residual = pb.active().empty() ? 0.0 : r;
    return res;
}

} // namespace

MinimizerResult minimize_rate(const Model& model, const PathMeasure& mu,
                              const FrustrationSpec& spec, const MinimizeOptions& opts) {
    Problem pb(model, mu, spec);
    if (pb.dim() == 0) throw std::invalid_argument("reference measure has empty support");

    // vacuous constraints: nu = mu is optimal at entropy zero
    if (pb.active().empty() || pb.feasible(pb.masses(pb.mu()))) {
        Candidate c;
        c.x = pb.mu();
        c.masses = pb.masses(c.x);
        c.entropy = 0.0;
        c.feasible = pb.feasible(c.masses);
        c.stable = true;
        if (c.feasible) return assemble(pb, spec, c, 0);
    }

    // exhaustive zero-pattern seeds for small supports, then random restarts
    const long long patterns = pb.dim() <= 5 ? (1LL << pb.dim()) - 1 : 0;
    const int restarts = std::max(1, opts.restarts) + static_cast<int>(patterns);
    std::vector<Candidate> results(static_cast<std::size_t>(restarts));
    int workers = std::clamp(opts.workers, 1, restarts);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            Problem local(model, mu, spec); // own scratch buffers
            for (int rIdx = w; rIdx < restarts; rIdx += workers) {
                long long pattern = rIdx < patterns ? rIdx : -1;
                results[static_cast<std::size_t>(rIdx)] =
                    run_restart(local, spec, opts, rIdx, pattern);
            }
        });
    }
    for (auto& t : pool) t.join();

    Candidate best;
    for (const auto& c : results) {
        if (!c.feasible) continue;
        if (!best.feasible || c.entropy < best.entropy) best = c;
    }
    if (best.feasible) {
        // step a hair into the interior so marginal indicators are robust
        Candidate nudged = best;
        for (double& v : nudged.x) v *= 1.0 + 1e-9;
        nudged.masses = pb.masses(nudged.x);
        if (pb.feasible(nudged.masses)) {
            nudged.entropy = pb.entropy(nudged.x);
            nudged.feasible = true;
            best = nudged;
        }
    }
    if (!best.feasible) {
        // infeasible: report the least-violating attempt, never silently
        double best_viol = kInf;
        for (const auto& c : results) {
            if (c.x.empty()) continue;
            double v = pb.violation(c.masses);
            if (v < best_viol) {
                best_viol = v;
                best = c;
            }
        }
        if (best.x.empty()) {
            best.x = pb.mu();
            best.masses = pb.masses(best.x);
            best.entropy = 0.0;
        }
    }
    return assemble(pb, spec, best, restarts);
}

PathMeasure lift_static(const SpatialMeasure& mu) {
    PathMeasure out;
    out.grid.spatial = mu.layout;
    out.grid.time = TimeGrid::static_mode();
    for (std::size_t i = 0; i < mu.mass.size(); ++i)
        if (mu.mass[i] > 0.0) out.mass[DiscretePath{static_cast<std::int32_t>(i)}] = mu.mass[i];
    return out;
}

SpatialMeasure project_static(const PathMeasure& nu) {
    if (nu.grid.time.count() != 1)
        throw std::invalid_argument("not a static path measure");
    return time_slice(nu, 0);
}

MinimizerResult minimize_rate(const Model& model, const SpatialMeasure& mu,
                              const FrustrationSpec& spec, const MinimizeOptions& opts) {
    return minimize_rate(model, lift_static(mu), spec, opts);
}

} // namespace relnet
