// Acceptance gates for the toolkit: each criterion prints one PASS/FAIL
// line; the exit code is the number of failures. --criterion N runs a single
// gate, --list shows them. The long full-scale uplink estimate only runs
// when RELNET_ACCEPT_LONG=1 is set in the environment.

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include "../oracles.hpp"
#include "../parity.hpp"
#include "../sandwich.hpp"
#include "relnet/analysis.hpp"
#include "relnet/entropy.hpp"
#include "relnet/io.hpp"
#include "relnet/montecarlo.hpp"
#include "relnet/rate_minimizer.hpp"
#include "relnet/scenario.hpp"
#include "relnet/variational.hpp"

using namespace relnet;
using oracle::kPi;

namespace {

struct Gate {
    int id;
    const char* name;
    std::function<bool(std::ostream&)> run;
};

std::string scenario_path(const char* name) {
    return (std::filesystem::path(RELNET_SCENARIO_DIR) / name).string();
}

bool check(std::ostream& log, bool ok, const std::string& what) {
    if (!ok) log << "    FAILED: " << what << "\n";
    return ok;
}

// --- 1: entropy identities ------------------------------------------------
bool gate_entropy(std::ostream& log) {
    auto lay = CellLayout::triadic(Window(2.0), 2);
    SpatialMeasure mu = SpatialMeasure::disk_lebesgue(lay, 2.0);
    SplitMix64 rng(1001);
    bool ok = true;
    for (int rep = 0; rep < 1000; ++rep) {
        SpatialMeasure nu(lay);
        for (std::size_t i = 0; i < mu.mass.size(); ++i)
            if (mu.mass[i] > 0.0) nu.mass[i] = mu.mass[i] * std::exp(0.6 * rng.normal());
        double a = 0.05 + 2.5 * rng.uniform01();
        double res = entropy_scaling_residual(a, nu, mu);
        double scale = 1.0 + std::abs(rel_entropy(nu, mu));
        ok &= check(log, res <= 1e-12 * scale, "scaling residual " + std::to_string(res));

        double eps = 0.005 + 0.485 * rng.uniform01();
        double h = rel_entropy(nu, mu);
        SpatialMeasure up = nu, dn = nu;
        for (std::size_t i = 0; i < nu.mass.size(); ++i) {
            up.mass[i] *= 1.0 + eps;
            dn.mass[i] *= 1.0 - eps;
        }
        ok &= check(log,
                    rel_entropy(up, mu) <= (1 + 3 * eps) * h + 3 * eps * mu.total() + 1e-12,
                    "upper perturbation bound");
        ok &= check(log,
                    rel_entropy(dn, mu) >= (1 - 3 * eps) * h - 3 * eps * mu.total() - 1e-12,
                    "lower perturbation bound");
        if (!ok) break;
    }
    return ok;
}

// --- 2: limiting downlink threshold ----------------------------------------
bool gate_c0_downlink(std::ostream& log) {
    double c0 = c0_downlink(5.0, PathLoss::min_power(1.0, 4.0));
    log << "    c0_downlink(5) = " << c0 << "\n";
    return check(log, std::abs(c0 - 5.5e-4) <= 0.03 * 5.5e-4, "value within 3% of 5.5e-4");
}

// --- 3: Monte Carlo against the Poisson tail --------------------------------
bool gate_mc_oracle(std::ostream& log) {
    Model model(Window(1.0), PathLoss::constant(1.0), QosMap::min_cap(2.0));
    bool ok = true;
    int idx = 0;
    for (double c : {0.28, 0.26, 0.251}) {
        IntensitySpec mu = IntensitySpec::uniform_disk(1.0, 60.0);
        FrustrationSpec fs;
        fs.ch[ChUpDir].enabled = true;
        fs.ch[ChUpDir].c = c;
        fs.ch[ChUpDir].b = 0.5;
        double thresh = std::max(60.0 / model.g().inverse(c), 60.0 * 0.5);
        double p = oracle::poisson_tail_gt(60.0 * mu.total_mass(), thresh);
        ok &= check(log, p >= 1e-4 && p <= 1e-1,
                    "oracle p in [1e-4, 1e-1], got " + std::to_string(p));
        EstimateOptions opts;
        opts.runs = 1000000;
        opts.seed = 42 + idx++;
        opts.workers = 2;
        EstimateResult r = estimate_probability(model, mu, fs, opts);
        log << "    c=" << c << ": p_exact=" << p << " p_hat=" << r.p_hat
            << " se=" << r.std_err << "\n";
        ok &= check(log, std::abs(r.p_hat - p) <= 3.0 * std::max(r.std_err, 1e-12),
                    "estimate within 3 standard errors");
    }
    return ok;
}

// --- 4: monotonicity of D and R in the measure ------------------------------
bool gate_monotonicity(std::ostream& log) {
    Model m(Window(2.0), PathLoss::min_power(1.0, 4.0), QosMap::min_cap(1.0));
    auto lay = CellLayout::triadic(Window(2.0), 2);
    SplitMix64 rng(4004);
    int strict_direct = 0, strict_relayed = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        SpatialMeasure nu(lay);
        for (double& v : nu.mass)
            if (rng.uniform01() > 0.4) v = rng.uniform01();
        SpatialMeasure nup = nu;
        bool grew = false;
        for (double& v : nup.mass)
            if (v > 0.0 && rng.uniform01() < 0.5) {
                v += 0.2 + rng.uniform01();
                grew = true;
            }
        Vec2 xi{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Vec2 eta{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        double d0 = m.qos_direct(xi, eta, nu), d1 = m.qos_direct(xi, eta, nup);
        double ru0 = m.qos_relayed_uplink(xi, nu), ru1 = m.qos_relayed_uplink(xi, nup);
        double rd0 = m.qos_relayed_downlink(xi, nu), rd1 = m.qos_relayed_downlink(xi, nup);
        if (!check(log, d1 <= d0 && ru1 <= ru0 && rd1 <= rd0, "monotone violation")) return false;
        if (grew && d1 < m.g().c_plus()) {
            ++strict_direct;
            if (!check(log, d1 < d0, "strict direct violation")) return false;
        }
        if (grew && ru1 < m.g().c_plus()) {
            ++strict_relayed;
            if (!check(log, ru1 < ru0, "strict relayed violation")) return false;
        }
    }
    log << "    strict cases exercised: direct=" << strict_direct
        << " relayed=" << strict_relayed << "\n";
    return check(log, strict_direct > 100 && strict_relayed > 100,
                 "enough strict cases constructed");
}

// --- 5: the discretization sandwich -----------------------------------------
bool gate_sandwich(std::ostream& log) {
    Model model(Window(1.0), PathLoss::min_power(1.0, 1.0), QosMap::min_cap(2.0));
    sandwich::Params prm;
    SplitMix64 rng(5005);
    int checked = 0, viol = 0;
    for (int rep = 0; rep < 100; ++rep) {
        WeightedTrajectories wt = sandwich::random_measure(model.window(), 1.0, 0.4, 8, rng);
        sandwich::Result r = sandwich::check(model, wt, prm, 0.1, 4);
        checked += r.checked;
        viol += r.violations;
    }
    log << "    " << checked << " path/channel components checked\n";
    return check(log, viol == 0, std::to_string(viol) + " sandwich violations");
}

// --- 6: minimizer parity with exhaustive lattice search ----------------------
bool gate_parity(std::ostream& log) {
    Model m(Window(2.0), PathLoss::min_power(1.0, 4.0), QosMap::min_cap(1.0));
    auto lay = CellLayout::triadic(Window(2.0), 1);
    SplitMix64 rng(42);
    bool ok = true;
    double worst = -1e300;
    for (int rep = 0; rep < 20; ++rep) {
        parity::Scenario3 sc = parity::random_scenario(m, lay, rng);
        auto brute = parity::brute_force(sc);
        if (!check(log, brute.has_value(), "lattice feasible")) return false;
        MinimizeOptions opt;
        opt.seed = 1000 + rep;
        opt.workers = 2;
        MinimizerResult r = minimize_rate(m, parity::to_measure(sc, lay), parity::to_spec(sc), opt);
        ok &= check(log, r.feasible, "optimizer reached the constraint");
        SpatialMeasure out = project_static(r.measure);
        std::array<double, 3> x{out.mass[sc.cells[0]], out.mass[sc.cells[1]],
                                out.mass[sc.cells[2]]};
        ok &= check(log, sc.oracle.mass(sc.channel, sc.c, x) > sc.b,
                    "returned point satisfies the strict event (oracle)");
        double gap = r.entropy - brute->entropy;
        worst = std::max(worst, gap);
        ok &= check(log, gap <= 1e-3,
                    "entropy within 1e-3 of lattice optimum (gap " + std::to_string(gap) + ")");
        if (!ok) break;
    }
    log << "    worst (optimizer - lattice) gap: " << worst << "\n";
    return ok;
}

// --- 7: variational approximation -------------------------------------------
bool gate_variational(std::ostream& log) {
    PathLoss ell = PathLoss::min_power(1.0, 4.0);
    double c0 = c0_uplink(5.0, ell);
    double c = 0.999 * c0, b = 0.1;
    bool ok = true;

    double alpha = solve_alpha(5.0, 0.5 * c0, 5.0, ell);
    auto f = [&](double s) { return 2.0 * kPi * s * std::exp(alpha * ell(s)) * ell(s); };
    double lhs = oracle::integrate_1d(f, 0.0, 1.0, 1e-12) +
                 oracle::integrate_1d(f, 1.0, 5.0, 1e-12);
    double target = ell(5.0) / (0.5 * c0);
    ok &= check(log, std::abs(lhs - target) <= 1e-6 * target,
                "solve_alpha plug-back residual <= 1e-6 relative");

    VariationalProfile p = approx_minimizer(5.0, c, b, ell);
    ok &= check(log, !p.degenerate, "profile exists below c0");
    log << "    rho_min=" << p.rho_min << " alpha=" << p.alpha
        << " outer_level=" << p.outer_level << "\n";
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (int i = 0; i <= 256; ++i) {
        double s = p.rho_min * i / 256.0;
        double v = profile_density(p, ell, s);
        if (v > prev + 1e-12) monotone = false;
        prev = v;
    }
    ok &= check(log, monotone, "inner profile non-increasing on [0, rho_min]");
    ok &= check(log,
                profile_density(p, ell, 0.0) >
                    profile_density(p, ell, p.rho_min * (1.0 - 1e-9)),
                "inner elevation near the origin");
    ok &= check(log, p.outer_level > 1.0, "outer level exceeds the a-priori density");
    return ok;
}

// --- 8: rotational symmetry of direct-uplink minimizers ----------------------
bool gate_radial_symmetry(std::ostream& log) {
    Model m(Window(3.0), PathLoss::min_power(1.0, 4.0), QosMap::min_cap(1.0));
    auto lay = CellLayout::polar(3.0, 2, 8);
    SpatialMeasure mu = SpatialMeasure::disk_lebesgue(lay, 3.0);
    FrustrationSpec fs;
    fs.ch[ChUpDir].enabled = true;
    fs.ch[ChUpDir].c = 0.003;
    fs.ch[ChUpDir].b = 2.0;
    MinimizeOptions opt;
    opt.seed = 8;
    opt.workers = 2;
    MinimizerResult r = minimize_rate(m, mu, fs, opt);
    bool ok = check(log, r.feasible, "feasible");
    SpatialMeasure out = project_static(r.measure);
    for (int s = 0; s < lay->shell_count(); ++s) {
        double mn = 1e300, mx = -1e300, mean = 0.0;
        int n = 0;
        for (std::size_t i = 0; i < lay->size(); ++i) {
            if (lay->shell_of(i) != s) continue;
            mn = std::min(mn, out.mass[i]);
            mx = std::max(mx, out.mass[i]);
            mean += out.mass[i];
            ++n;
        }
        mean /= n;
        double dev = (mx - mn) / std::max(std::abs(mean), 1e-300);
        log << "    shell " << s << ": mean=" << mean << " rel_dev=" << dev << "\n";
        ok &= check(log, dev <= 1e-3, "per-shell deviation <= 1e-3 relative");
    }
    return ok;
}

// --- 9: flat-disk uplink headline estimate ----------------------------------
bool gate_headline(std::ostream& log) {
    Scenario sc = scenario_from_file(scenario_path("uplink-direct-7.1.json"));
    Model model = sc.model();
    const char* long_flag = std::getenv("RELNET_ACCEPT_LONG");
    bool ok = true;

    EstimateOptions opts;
    opts.runs = 1000000;
    opts.seed = 2027;
    opts.workers = 2;
    EstimateResult r = estimate_probability(model, sc.intensity, sc.frustration, opts);
    log << "    smoke: hits=" << r.hits << "/1e6 in " << r.wall_seconds << "s\n";
    ok &= check(log, r.hits <= 10, "smoke hit count in {0..10}");
    ok &= check(log, r.wall_seconds < 300.0, "smoke run under 5 minutes");

    if (long_flag && std::strcmp(long_flag, "1") == 0) {
        EstimateOptions full;
        full.runs = 100000000;
        full.seed = 2028;
        full.workers = 2;
        EstimateResult rf = estimate_probability(model, sc.intensity, sc.frustration, full);
        log << "    full: hits=" << rf.hits << "/1e8, p_hat=" << rf.p_hat << " in "
            << rf.wall_seconds << "s\n";
        ok &= check(log, rf.p_hat >= 0.5 * 1.8e-6 && rf.p_hat <= 2.0 * 1.8e-6,
                    "p_hat within a factor 2 of 1.8e-6");
    } else {
        log << "    (full 1e8-run estimate skipped; set RELNET_ACCEPT_LONG=1)\n";
    }
    return ok;
}

// --- 10: determinism of the estimator CLI across worker counts ---------------
bool gate_determinism(std::ostream& log) {
    namespace fs = std::filesystem;
    fs::path out = fs::temp_directory_path() / "relnet_accept_det";
    fs::create_directories(out);
    std::uint64_t hits[3];
    int i = 0;
    for (const char* workers : {"1", "4", "16"}) {
        fs::path res = out / (std::string("res") + workers + ".json");
        std::string cmd = std::string(RELNET_CLI_PATH) + " estimate --config " +
                          scenario_path("uplink-direct-7.1.json") +
                          " --set intensity.lambda=5 --runs 60000 --seed 99 --workers " +
                          workers + " --out " + res.string() + " >/dev/null 2>&1";
        if (!check(log, std::system(cmd.c_str()) == 0, "cli run succeeded")) return false;
        std::ifstream f(res);
        std::stringstream ss;
        ss << f.rdbuf();
        hits[i++] = estimate_from_json(ss.str()).hits;
    }
    log << "    hits: " << hits[0] << ", " << hits[1] << ", " << hits[2] << "\n";
    return check(log, hits[0] == hits[1] && hits[1] == hits[2],
                 "identical hit counts for workers 1/4/16");
}

// --- 11: symmetry breaking diagnostics ---------------------------------------
bool gate_symmetry_breaking(std::ostream& log) {
    bool ok = true;

    // downlink: collect >= 200 hit runs, centroid angles ~ uniform
    {
        Scenario sc = scenario_from_file(scenario_path("downlink-direct-7.2.json"));
        Model model = sc.model();
        std::vector<HitRecord> hits;
        std::uint64_t seed_block = 0;
        while (hits.size() < 200 && seed_block < 64) {
            EstimateOptions opts;
            opts.runs = 384;
            opts.seed = 7100 + seed_block++;
            opts.workers = 2;
            opts.collect_hits = true;
            estimate_probability(model, sc.intensity, sc.frustration, opts, {}, std::nullopt,
                                 &hits);
        }
        log << "    downlink hit runs collected: " << hits.size() << "\n";
        ok &= check(log, hits.size() >= 200, "collected at least 200 hits");

        std::vector<double> centroid_angles;
        double concentration = 0.0;
        int used = 0;
        for (const auto& h : hits) {
            std::vector<Vec2> bad;
            std::vector<double> angles;
            for (std::size_t k = 0; k < h.points.size(); ++k) {
                if (!h.flags[k]) continue;
                bad.push_back(h.points[k]);
                angles.push_back(std::atan2(h.points[k].y, h.points[k].x));
            }
            if (auto a = cluster_angle(bad)) {
                centroid_angles.push_back(*a);
                concentration += circular_stats(angles).resultant;
                ++used;
            }
        }
        CircularStats st = circular_stats(centroid_angles);
        log << "    centroid-angle circular variance = " << st.circ_variance
            << ", mean per-run concentration = " << concentration / std::max(used, 1) << "\n";
        ok &= check(log, st.circ_variance >= 0.9, "centroid angles close to uniform");
    }

    // uplink: pooled frustrated-user angles show no significant concentration
    {
        Scenario sc = scenario_from_file(scenario_path("uplink-direct-7.1.json"));
        Model model = sc.model();
        std::vector<HitRecord> hits;
        EstimateOptions opts;
        opts.runs = 6000000;
        opts.seed = 7301;
        opts.workers = 2;
        opts.collect_hits = true;
        estimate_probability(model, sc.intensity, sc.frustration, opts, {}, std::nullopt, &hits);
        std::vector<double> pooled;
        for (const auto& h : hits)
            for (std::size_t k = 0; k < h.points.size(); ++k)
                if (h.flags[k]) pooled.push_back(std::atan2(h.points[k].y, h.points[k].x));
        double pval = pooled.empty() ? 1.0 : rayleigh_pvalue(pooled);
        log << "    uplink hits=" << hits.size() << ", pooled angles=" << pooled.size()
            << ", Rayleigh p=" << pval << "\n";
        ok &= check(log, hits.size() >= 3, "collected uplink hit runs");
        ok &= check(log, pval > 0.01, "no significant pooled angular concentration");
    }
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<Gate> gates{
        {1, "entropy scaling identity and perturbation bounds", gate_entropy},
        {2, "limiting downlink threshold near 5.5e-4", gate_c0_downlink},
        {3, "Monte Carlo estimates match the Poisson-tail closed form", gate_mc_oracle},
        {4, "QoS monotonicity in the measure (1000 instances)", gate_monotonicity},
        {5, "discretization sandwich at delta = 3^-4", gate_sandwich},
        {6, "rate minimizer parity with exhaustive lattice search", gate_parity},
        {7, "variational approximation of the uplink minimizer", gate_variational},
        {8, "rotational symmetry of direct-uplink minimizers", gate_radial_symmetry},
        {9, "flat-disk uplink headline estimate (smoke / long)", gate_headline},
        {10, "estimator determinism across worker counts", gate_determinism},
        {11, "symmetry-breaking diagnostics", gate_symmetry_breaking},
    };

    int only = -1;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
        if (std::strcmp(argv[i], "--list") == 0) {
            for (const auto& g : gates) std::cout << g.id << ": " << g.name << "\n";
            return 0;
        }
    }

    int failures = 0;
    for (const auto& g : gates) {
        if (only > 0 && g.id != only) continue;
        std::ostringstream log;
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = g.run(log);
        } catch (const std::exception& e) {
            log << "    exception: " << e.what() << "\n";
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << g.id << ": " << g.name
                  << " (" << secs << "s)\n"
                  << log.str();
        if (!ok) ++failures;
    }
    return failures;
}
