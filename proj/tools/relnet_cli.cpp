// relnet: simulate, estimate, minimize, approximate and analyze
// relay-augmented cellular scenarios described by JSON config files.
//
// Exit codes: 0 success, 2 config error, 3 infeasible optimization.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "relnet/analysis.hpp"
#include "relnet/entropy.hpp"
#include "relnet/io.hpp"
#include "relnet/montecarlo.hpp"
#include "relnet/rate_minimizer.hpp"
#include "relnet/scenario.hpp"
#include "relnet/variational.hpp"

namespace fs = std::filesystem;
using namespace relnet;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides) {
    std::string text = read_file(path);
    for (const auto& ov : overrides) text = apply_override(text, ov);
    return scenario_from_json(text);
}

fs::path out_path(const std::string& out_dir, const std::string& name) {
    fs::create_directories(out_dir);
    return fs::path(out_dir) / name;
}

int cmd_simulate(const std::string& config, const std::vector<std::string>& overrides,
                 std::uint64_t seed, const std::string& out_dir) {
    Scenario sc = load_scenario(config, overrides);
    Model model = sc.model();
    PointConfig cfg = sample_poisson(sc.intensity, seed);

    std::array<bool, 4> need = sc.frustration.needed();
    QosTable tab = qos_table(model, cfg, {true, true, true, true}, sc.frustration.scale);
    std::vector<std::uint8_t> flags = frustration_flags(model, cfg, sc.frustration);

    auto path = out_path(out_dir, "users.csv");
    std::ofstream f(path);
    f << "x,y,qos_up,qos_up_dir,qos_do,qos_do_dir,frustrated_mask\n";
    for (std::size_t i = 0; i < cfg.points.size(); ++i) {
        f << format_double(cfg.points[i].x) << ',' << format_double(cfg.points[i].y);
        for (int c : {ChUp, ChUpDir, ChDown, ChDownDir})
            f << ',' << format_double(tab.ch[c][i]);
        f << ',' << static_cast<int>(flags[i]) << '\n';
    }
    (void)need;
    std::cerr << "simulate: " << cfg.points.size() << " users -> " << path.string() << "\n";
    return 0;
}

int cmd_estimate(const std::string& config, const std::vector<std::string>& overrides,
                 std::uint64_t runs, std::uint64_t seed, int workers,
                 const std::string& out_file, const std::string& dump_hits,
                 const std::string& out_dir) {
    Scenario sc = load_scenario(config, overrides);
    Model model = sc.model();
    if (!sc.frustration.any_event_channel())
        throw std::invalid_argument("config: estimation needs at least one channel with b");

    EstimateOptions opts;
    opts.runs = runs;
    opts.seed = seed;
    opts.workers = workers;
    opts.collect_hits = !dump_hits.empty();

    std::vector<HitRecord> hits;
    EstimateResult res = estimate_probability(model, sc.intensity, sc.frustration, opts,
                                              sc.mobility, sc.time_grid(),
                                              opts.collect_hits ? &hits : nullptr);

    std::cerr << "estimate: per-run cost "
              << (origin_only_event(sc.frustration) ? "O(N)" : "O(N^2)") << ", hits=" << res.hits
              << "/" << res.runs << ", p_hat=" << res.p_hat << ", wall=" << res.wall_seconds
              << "s\n";

    auto path = out_file.empty() ? out_path(out_dir, "result.json") : fs::path(out_file);
    if (auto dir = path.parent_path(); !dir.empty()) fs::create_directories(dir);
    std::ofstream(path) << estimate_to_json(res);
    if (!dump_hits.empty()) write_hits_csv(dump_hits, hits);
    return 0;
}

int cmd_minimize(const std::string& config, const std::vector<std::string>& overrides,
                 std::uint64_t seed, int workers, int restarts, const std::string& out_dir) {
    Scenario sc = load_scenario(config, overrides);
    Model model = sc.model();
    if (!sc.grid_exponent)
        throw std::invalid_argument("config: minimization needs a grid");
    PathGrid grid = *sc.grid();

    PathMeasure mu;
    if (sc.horizon) {
        throw std::invalid_argument(
            "config: minimize currently expects a static grid (omit grid.T)");
    }
    SpatialMeasure mu_s =
        SpatialMeasure::from_density(grid.spatial, [&](Vec2 p) { return sc.intensity.density(p); });
    mu = lift_static(mu_s);

    MinimizeOptions opts;
    opts.seed = seed;
    opts.workers = workers;
    if (restarts > 0) opts.restarts = restarts;
    MinimizerResult res = minimize_rate(model, mu, sc.frustration, opts);

    write_measure_csv(out_path(out_dir, "minimizer.csv").string(), project_static(res.measure));
    nlohmann::json j;
    j["entropy"] = res.entropy;
    j["residual"] = res.constraint_residual;
    j["converged"] = res.converged;
    std::ofstream(out_path(out_dir, "minimizer.json")) << j.dump(2) << "\n";

    std::cerr << "minimize: entropy=" << res.entropy << " feasible=" << res.feasible
              << " converged=" << res.converged << "\n";
    return res.feasible ? 0 : kExitInfeasible;
}

int cmd_approx(const std::string& config, const std::vector<std::string>& overrides,
               std::size_t profile_points, const std::string& out_dir) {
    Scenario sc = load_scenario(config, overrides);
    if (!sc.frustration.ch[ChUpDir].enabled || !sc.frustration.ch[ChUpDir].b)
        throw std::invalid_argument("config: approx needs an up_dir channel with c and b");
    double r = sc.intensity.support_radius();
    double c = sc.frustration.ch[ChUpDir].c;
    double b = *sc.frustration.ch[ChUpDir].b;

    VariationalProfile p = approx_minimizer(r, c, b, sc.ell);
    nlohmann::json j;
    j["degenerate"] = p.degenerate;
    if (!p.degenerate) {
        j["rho_min"] = p.rho_min;
        j["alpha"] = p.alpha;
        j["outer_level"] = p.outer_level;
        j["objective"] = p.objective;
        j["gamma_int"] = p.gamma_int;
        j["gamma_out"] = p.gamma_out;
    }
    std::ofstream(out_path(out_dir, "approx.json")) << j.dump(2) << "\n";

    RadialProfile prof;
    prof.radii.resize(profile_points);
    prof.intensity.resize(profile_points);
    for (std::size_t i = 0; i < profile_points; ++i) {
        prof.radii[i] = r * (static_cast<double>(i) + 0.5) / static_cast<double>(profile_points);
        prof.intensity[i] = profile_density(p, sc.ell, prof.radii[i]);
    }
    write_profile_csv(out_path(out_dir, "approx_profile.csv").string(), prof);

    if (p.degenerate)
        std::cerr << "approx: degenerate (c >= c0, no deviation needed)\n";
    else
        std::cerr << "approx: rho_min=" << p.rho_min << " alpha=" << p.alpha
                  << " outer_level=" << p.outer_level << "\n";
    return 0;
}

int cmd_analyze(const std::string& hits_path, const std::string& config,
                const std::vector<std::string>& overrides, std::optional<double> bandwidth,
                const std::string& out_dir) {
    Scenario sc = load_scenario(config, overrides);
    std::vector<HitRecord> hits = read_hits_csv(hits_path);
    if (hits.empty()) throw std::invalid_argument("config: hits file has no rows");

    double r = sc.intensity.support_radius();
    std::vector<double> radii, weights;
    std::vector<double> centroid_angles;
    std::vector<double> pooled_angles;
    double mean_concentration = 0.0;
    std::size_t runs_with_angle = 0;

    for (const auto& h : hits) {
        std::vector<Vec2> frustrated;
        for (std::size_t i = 0; i < h.points.size(); ++i) {
            if (!h.flags[i]) continue;
            frustrated.push_back(h.points[i]);
            radii.push_back(std::min(norm(h.points[i]), r));
            weights.push_back(1.0 / (sc.intensity.lambda() * static_cast<double>(hits.size())));
            pooled_angles.push_back(std::atan2(h.points[i].y, h.points[i].x));
        }
        if (frustrated.empty()) continue;
        if (auto ang = cluster_angle(frustrated)) {
            centroid_angles.push_back(*ang);
            std::vector<double> angs;
            angs.reserve(frustrated.size());
            for (const Vec2& p : frustrated) angs.push_back(std::atan2(p.y, p.x));
            mean_concentration += circular_stats(angs).resultant;
            ++runs_with_angle;
        }
    }
    if (radii.empty()) throw std::invalid_argument("config: no frustrated users in hits file");

    RadialProfile prof = kde_radial(radii, weights, r, bandwidth);
    write_profile_csv(out_path(out_dir, "profile.csv").string(), prof);

    CircularStats centroid_stats = circular_stats(centroid_angles);
    nlohmann::json j;
    j["hit_runs"] = hits.size();
    j["frustrated_users"] = radii.size();
    j["centroid_angle_circ_variance"] = centroid_stats.circ_variance;
    j["mean_per_run_concentration"] =
        runs_with_angle ? mean_concentration / static_cast<double>(runs_with_angle) : 0.0;
    j["pooled_angle_rayleigh_p"] = rayleigh_pvalue(pooled_angles);
    std::ofstream(out_path(out_dir, "diagnostics.json")) << j.dump(2) << "\n";

    std::cerr << "analyze: " << radii.size() << " frustrated users in " << hits.size()
              << " hit runs\n";
    return 0;
}

} // namespace

const char* kConfigHelp = R"(Scenario config keys (JSON):
  window.r [length], window.d (=2)
  ell.kind: min-power {cap, exponent} | constant {value}
  g.kind: min-cap {cap} | shannon-cap {cap}
  intensity.kind: uniform-disk {radius [length], density [users/area], lambda}
    | uniform-cube {half_width, density, lambda}
    | ring-strip {radius, center_radius, center_density, strip_inner, strip_outer,
                  strip_density, boundary_inner, boundary_density, lambda}
    | piecewise-radial {bands: [{inner, outer, density}], lambda}
  mobility.kind: static | rwp {speed [length/time], pause [time]}
  grid: {delta_exponent (mesh 3^-m), T [time] or null for static}
  bs_interference: bool (base station counts as one transmitter)
  frustration.threshold_scale: qos | raw-sir
  frustration.channels.{up,up_dir,do,do_dir}:
    {a [time, 0 in static mode], c [QoS or SIR per threshold_scale],
     b [empirical mass] | "inf" | "-inf" | {fraction_of_mass}}
)";

int main(int argc, char** argv) {
    CLI::App app{"relay-augmented cellular network simulator and rate-function toolkit"};
    app.require_subcommand(1);
    app.footer(kConfigHelp);

    std::string config, out_dir = "out", out_file, dump_hits, hits_path;
    std::vector<std::string> overrides;
    std::uint64_t runs = 1000, seed = 1;
    int workers = 1, restarts = 0;
    std::size_t profile_points = 256;
    double bandwidth = 0.0;

    auto add_common = [&](CLI::App* sub, bool needs_config = true) {
        if (needs_config)
            sub->add_option("--config", config, "scenario JSON file")->required();
        sub->add_option("--set", overrides,
                        "override a config key, e.g. --set intensity.lambda=100");
        sub->add_option("--out-dir", out_dir, "output directory (default: out)");
        sub->footer(kConfigHelp);
    };

    auto* sim = app.add_subcommand("simulate", "one realization: users, QoS, frustration flags");
    add_common(sim);
    sim->add_option("--seed", seed, "RNG seed (default 1)");

    auto* est = app.add_subcommand("estimate", "Monte Carlo frustration-event probability");
    add_common(est);
    est->add_option("--runs", runs, "number of runs")->required();
    est->add_option("--seed", seed, "RNG seed (default 1)");
    est->add_option("--workers", workers, "worker threads (default 1)");
    est->add_option("--out", out_file, "result JSON path (default <out-dir>/result.json)");
    est->add_option("--dump-hits", dump_hits, "write hit configurations to this CSV");

    auto* min = app.add_subcommand("minimize", "constrained entropy minimization on the grid");
    add_common(min);
    min->add_option("--seed", seed, "RNG seed (default 1)");
    min->add_option("--workers", workers, "worker threads (default 1)");
    min->add_option("--restarts", restarts, "multi-start count (default 16)");

    auto* apx = app.add_subcommand("approx", "radial variational approximation (direct uplink)");
    add_common(apx);
    apx->add_option("--profile-points", profile_points, "radial grid size (default 256)");

    auto* ana = app.add_subcommand("analyze", "radial KDE and symmetry diagnostics of hit dumps");
    add_common(ana);
    ana->add_option("--hits", hits_path, "hits CSV from estimate --dump-hits")->required();
    ana->add_option("--bandwidth", bandwidth, "KDE bandwidth (default: Silverman)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(config, overrides, seed, out_dir);
        if (est->parsed())
            return cmd_estimate(config, overrides, runs, seed, workers, out_file, dump_hits,
                                out_dir);
        if (min->parsed()) return cmd_minimize(config, overrides, seed, workers, restarts, out_dir);
        if (apx->parsed()) return cmd_approx(config, overrides, profile_points, out_dir);
        if (ana->parsed())
            return cmd_analyze(hits_path, config, overrides,
                               bandwidth > 0.0 ? std::optional<double>(bandwidth) : std::nullopt,
                               out_dir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
