#include "relnet/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace relnet {

namespace {
constexpr double kPi = std::numbers::pi;
}

IntensitySpec IntensitySpec::uniform_disk(double radius, double lambda, double density) {
    if (!(radius > 0.0) || !(lambda > 0.0) || density < 0.0)
        throw std::invalid_argument("uniform-disk needs radius > 0, lambda > 0, density >= 0");
    IntensitySpec s;
    s.kind_ = Kind::UniformDisk;
    s.lambda_ = lambda;
    s.density_ = density;
    s.support_radius_ = radius;
    s.total_mass_ = density * kPi * radius * radius;
    return s;
}

IntensitySpec IntensitySpec::uniform_cube(double half_width, double lambda, double density) {
    if (!(half_width > 0.0) || !(lambda > 0.0) || density < 0.0)
        throw std::invalid_argument("uniform-cube needs half-width > 0, lambda > 0, density >= 0");
    IntensitySpec s;
    s.kind_ = Kind::UniformCube;
    s.lambda_ = lambda;
    s.density_ = density;
    s.support_radius_ = half_width;
    s.total_mass_ = density * 4.0 * half_width * half_width;
    return s;
}

IntensitySpec IntensitySpec::piecewise_radial(std::vector<RadialBand> bands, double lambda) {
    if (bands.empty() || !(lambda > 0.0))
        throw std::invalid_argument("piecewise-radial needs bands and lambda > 0");
    IntensitySpec s;
    s.kind_ = Kind::PiecewiseRadial;
    s.lambda_ = lambda;
    double prev = 0.0;
    double cum = 0.0;
    for (const auto& b : bands) {
        if (b.inner < prev || !(b.outer > b.inner) || b.density < 0.0)
            throw std::invalid_argument("radial bands must be disjoint, increasing, nonnegative");
        prev = b.outer;
        cum += b.density * kPi * (b.outer * b.outer - b.inner * b.inner);
        s.band_cum_.push_back(cum);
    }
    if (!(cum > 0.0)) throw std::invalid_argument("intensity must have positive total mass");
    s.bands_ = std::move(bands);
    s.total_mass_ = cum;
    s.support_radius_ = prev;
    return s;
}

IntensitySpec IntensitySpec::ring_strip(double radius, double center_radius,
                                        double center_density, double strip_inner,
                                        double strip_outer, double strip_density,
                                        double boundary_inner, double boundary_density,
                                        double lambda) {
    if (!(center_radius < strip_inner && strip_inner < strip_outer &&
          strip_outer < boundary_inner && boundary_inner < radius))
        throw std::invalid_argument("ring-strip radii must be nested inside the disk");
    std::vector<RadialBand> bands{{0.0, center_radius, center_density},
                                  {strip_inner, strip_outer, strip_density},
                                  {boundary_inner, radius, boundary_density}};
    IntensitySpec s = piecewise_radial(std::move(bands), lambda);
    s.kind_ = Kind::RingStrip;
    return s;
}

double IntensitySpec::density(Vec2 p) const {
    switch (kind_) {
        case Kind::UniformDisk:
            return norm_sq(p) <= support_radius_ * support_radius_ ? density_ : 0.0;
        case Kind::UniformCube:
            return std::abs(p.x) <= support_radius_ && std::abs(p.y) <= support_radius_ ? density_
                                                                                        : 0.0;
        default: {
            double s = norm(p);
            for (const auto& b : bands_)
                if (s >= b.inner && s <= b.outer) return b.density;
            return 0.0;
        }
    }
}

Vec2 IntensitySpec::sample(SplitMix64& rng) const {
    switch (kind_) {
        case Kind::UniformDisk: {
            double R = support_radius_;
            for (;;) {
                double x = rng.uniform(-1.0, 1.0);
                double y = rng.uniform(-1.0, 1.0);
                if (x * x + y * y <= 1.0) return {R * x, R * y};
            }
        }
        case Kind::UniformCube:
            return {rng.uniform(-support_radius_, support_radius_),
                    rng.uniform(-support_radius_, support_radius_)};
        default: {
            double u = rng.uniform01() * total_mass_;
            std::size_t k = 0;
            while (k + 1 < band_cum_.size() && u > band_cum_[k]) ++k;
            const RadialBand& b = bands_[k];
            double v = rng.uniform01();
            double s = std::sqrt(b.inner * b.inner + v * (b.outer * b.outer - b.inner * b.inner));
            double phi = 2.0 * kPi * rng.uniform01();
            return {s * std::cos(phi), s * std::sin(phi)};
        }
    }
}

PointConfig sample_poisson(const IntensitySpec& spec, std::uint64_t seed) {
    SplitMix64 rng(seed);
    PointConfig cfg;
    cfg.lambda = spec.lambda();
    double mean = spec.lambda() * spec.total_mass();
    if (mean > 0.0) {
        std::poisson_distribution<long long> pois(mean);
        long long n = pois(rng);
        cfg.points.reserve(static_cast<std::size_t>(n));
        for (long long i = 0; i < n; ++i) cfg.points.push_back(spec.sample(rng));
    }
    return cfg;
}

bool origin_only_event(const FrustrationSpec& spec) {
    if (!(spec.ch[ChUpDir].enabled && spec.ch[ChUpDir].b)) return false;
    for (int i = 0; i < 4; ++i)
        if (spec.ch[i].enabled && spec.ch[i].b && i != ChUpDir) return false;
    return true;
}

namespace {

// One static run on the origin-only fast path: no point storage, single pass.
int run_fast_updir(const Model& model, const IntensitySpec& intensity,
                   const FrustrationSpec& spec, std::uint64_t seed, std::vector<double>& ell_buf) {
    SplitMix64 rng(seed);
    const PathLoss& ell = model.ell();
    const double lambda = intensity.lambda();
    const ChannelSpec& ch = spec.ch[ChUpDir];

    double mean = lambda * intensity.total_mass();
    long long n = 0;
    if (mean > 0.0) {
        std::poisson_distribution<long long> pois(mean);
        n = pois(rng);
    }
    ell_buf.clear();
    ell_buf.reserve(static_cast<std::size_t>(n));
    double io = 0.0;
    for (long long i = 0; i < n; ++i) {
        Vec2 p = intensity.sample(rng);
        double e = ell.eval_sq(norm_sq(p));
        ell_buf.push_back(e);
        io += e;
    }
    if (model.bs_interference()) io += ell.eval_sq(0.0);

    // SIR-scale threshold: g(SIR) < c  iff  SIR < g^{-1}(c)
    double sir_thresh =
        spec.scale == ThresholdScale::RawSir ? ch.c : model.g().inverse(ch.c);
    double cut = sir_thresh * io / lambda;
    std::size_t count = 0;
    for (double e : ell_buf)
        if (e < cut) ++count;
    double mass = static_cast<double>(count) / lambda;
    return mass > *ch.b ? 1 : 0;
}

int run_static(const Model& model, const IntensitySpec& intensity, const FrustrationSpec& spec,
               std::uint64_t seed) {
    PointConfig cfg = sample_poisson(intensity, seed);
    return event_indicator(channel_masses(model, cfg, spec), spec);
}

int run_mobile(const Model& model, const IntensitySpec& intensity, const FrustrationSpec& spec,
               const MobilityModel& mobility, const TimeGrid& time, std::uint64_t seed) {
    SplitMix64 rng(seed);
    TrajectoryConfig cfg;
    cfg.lambda = intensity.lambda();
    double mean = cfg.lambda * intensity.total_mass();
    if (mean > 0.0) {
        std::poisson_distribution<long long> pois(mean);
        long long n = pois(rng);
        Window w(std::max(1.0, std::ceil(intensity.support_radius())));
        cfg.users.reserve(static_cast<std::size_t>(n));
        for (long long i = 0; i < n; ++i) {
            Vec2 start = intensity.sample(rng);
            if (mobility.kind == MobilityModel::Kind::Static || mobility.speed == 0.0)
                cfg.users.push_back(Trajectory::constant(start, time.horizon()));
            else
                cfg.users.push_back(
                    sample_rwp(start, w, mobility.speed, mobility.pause, time.horizon(), rng));
        }
    }
    return event_indicator(channel_masses(model, cfg, spec, time), spec);
}

} // namespace

EstimateResult estimate_probability(const Model& model, const IntensitySpec& intensity,
                                    const FrustrationSpec& spec, const EstimateOptions& opts,
                                    const MobilityModel& mobility,
                                    const std::optional<TimeGrid>& time,
                                    std::vector<HitRecord>* hits_out) {
    if (opts.runs == 0) throw std::invalid_argument("need at least one run");
    const bool mobile =
        mobility.kind == MobilityModel::Kind::RandomWaypoint && mobility.speed > 0.0;
    if (mobile && !time)
        throw std::invalid_argument("mobile estimation needs a time grid");
    if (mobile && opts.collect_hits)
        throw std::invalid_argument("hit dumps are only supported for static scenarios");
    const bool fast = !mobile && origin_only_event(spec) &&
                      (spec.scale == ThresholdScale::RawSir ||
                       spec.ch[ChUpDir].c < model.g().c_plus());

    auto t0 = std::chrono::steady_clock::now();
    int workers = std::max(1, opts.workers);
    auto nworkers = std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), opts.runs);

    std::vector<std::uint64_t> counts(nworkers, 0);
    std::vector<std::vector<std::uint64_t>> hit_ids(nworkers);
    std::vector<std::thread> pool;
    for (std::uint64_t w = 0; w < nworkers; ++w) {
        std::uint64_t begin = opts.runs * w / nworkers;
        std::uint64_t end = opts.runs * (w + 1) / nworkers;
        pool.emplace_back([&, w, begin, end]() {
            std::vector<double> buf;
            std::uint64_t local = 0;
            for (std::uint64_t k = begin; k < end; ++k) {
                std::uint64_t s = run_seed(opts.seed, k);
                int hit;
                if (fast)
                    hit = run_fast_updir(model, intensity, spec, s, buf);
                else if (mobile)
                    hit = run_mobile(model, intensity, spec, mobility, *time, s);
                else
                    hit = run_static(model, intensity, spec, s);
                if (hit) {
                    ++local;
                    if (opts.collect_hits) hit_ids[w].push_back(k);
                }
            }
            counts[w] = local;
        });
    }
    for (auto& t : pool) t.join();

    EstimateResult res;
    res.runs = opts.runs;
    res.seed = opts.seed;
    for (std::uint64_t c : counts) res.hits += c;
    res.p_hat = static_cast<double>(res.hits) / static_cast<double>(res.runs);
    res.std_err = std::sqrt(res.p_hat * (1.0 - res.p_hat) / static_cast<double>(res.runs));
    res.rate_hat = res.p_hat > 0.0
                       ? -std::log(res.p_hat) / intensity.lambda()
                       : std::numeric_limits<double>::infinity();

    if (hits_out && opts.collect_hits) {
        // Replay hit runs to materialize configurations and per-user flags.
        for (std::uint64_t w = 0; w < nworkers; ++w) {
            for (std::uint64_t k : hit_ids[w]) {
                HitRecord rec;
                rec.run_id = k;
                PointConfig cfg = sample_poisson(intensity, run_seed(opts.seed, k));
                rec.flags = frustration_flags(model, cfg, spec);
                rec.points = std::move(cfg.points);
                hits_out->push_back(std::move(rec));
            }
        }
    }

    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<RatePoint> rate_curve(const Model& model, IntensitySpec intensity,
                                  const FrustrationSpec& spec, const std::vector<double>& lambdas,
                                  std::uint64_t runs_per_lambda, std::uint64_t seed, int workers) {
    std::vector<RatePoint> out;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        intensity.set_lambda(lambdas[i]);
        EstimateOptions opts;
        opts.runs = runs_per_lambda;
        opts.seed = run_seed(seed, 0x9E3779B97F4A7C15ULL * (i + 1));
        opts.workers = workers;
        EstimateResult r = estimate_probability(model, intensity, spec, opts);
        out.push_back({lambdas[i], r.p_hat, r.rate_hat});
    }
    return out;
}

} // namespace relnet
