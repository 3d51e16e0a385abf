#include <doctest.h>

#include "parity.hpp"
#include "relnet/entropy.hpp"
#include "relnet/rate_minimizer.hpp"

using namespace relnet;

namespace {

Model make_model(double r) {
    return Model(Window(r), PathLoss::min_power(1.0, 4.0), QosMap::min_cap(1.0));
}

} // namespace

TEST_CASE("vacuous constraints return the reference measure") {
    Model m = make_model(1.0);
    auto lay = CellLayout::triadic(Window(1.0), 1);
    SpatialMeasure mu = SpatialMeasure::disk_lebesgue(lay, 1.0);
    FrustrationSpec fs;
    for (int i = 0; i < 4; ++i) {
        fs.ch[i].enabled = true;
        fs.ch[i].c = 0.1;
        fs.ch[i].b = -1.0;
    }
    MinimizerResult r = minimize_rate(m, mu, fs);
    CHECK(r.feasible);
    CHECK(r.converged);
    CHECK(r.entropy == doctest::Approx(0.0));
    SpatialMeasure out = project_static(r.measure);
    for (std::size_t i = 0; i < mu.mass.size(); ++i)
        CHECK(out.mass[i] == doctest::Approx(mu.mass[i]));
}

TEST_CASE("single-cell analytic optimum") {
    Model m = make_model(1.0);
    auto lay = CellLayout::triadic(Window(1.0), 1);
    SpatialMeasure mu(lay);
    std::size_t cell = lay->snap({0.4, 0.4});
    mu.mass[cell] = 0.7;
    FrustrationSpec fs;
    fs.ch[ChUpDir].enabled = true;
    fs.ch[ChUpDir].c = 0.5;
    fs.ch[ChUpDir].b = 0.01;
    MinimizeOptions opt;
    opt.seed = 3;
    opt.workers = 2;
    MinimizerResult r = minimize_rate(m, mu, fs, opt);

    // one cell: SIR = 1/mass, frustrated iff mass > 1/g^{-1}(c)
    double m_star = 1.0 / m.g().inverse(0.5);
    REQUIRE(r.feasible);
    CHECK(r.converged);
    SpatialMeasure out = project_static(r.measure);
    CHECK(out.mass[cell] == doctest::Approx(m_star).epsilon(1e-6));
    CHECK(r.entropy == doctest::Approx(h_cell(m_star, 0.7)).epsilon(1e-6));
    CHECK(r.eps_feas == doctest::Approx(1e-6));
}

TEST_CASE("three-cell lattice parity (sampled)") {
    Model m = make_model(2.0);
    auto lay = CellLayout::triadic(Window(2.0), 1);
    SplitMix64 rng(420);
    for (int rep = 0; rep < 4; ++rep) {
        parity::Scenario3 sc = parity::random_scenario(m, lay, rng);
        auto brute = parity::brute_force(sc);
        REQUIRE(brute);
        MinimizeOptions opt;
        opt.seed = 77 + rep;
        opt.workers = 2;
        MinimizerResult r = minimize_rate(m, parity::to_measure(sc, lay), parity::to_spec(sc), opt);
        REQUIRE(r.feasible);
        CHECK(r.entropy <= brute->entropy + 1e-3);
        // the returned point satisfies the true strict event per the oracle
        SpatialMeasure out = project_static(r.measure);
        std::array<double, 3> x{out.mass[sc.cells[0]], out.mass[sc.cells[1]],
                                out.mass[sc.cells[2]]};
        CHECK(sc.oracle.mass(sc.channel, sc.c, x) > sc.b);
    }
}

TEST_CASE("never worse than a hand-built feasible measure") {
    Model m = make_model(2.0);
    auto lay = CellLayout::triadic(Window(2.0), 1);
    SpatialMeasure mu = SpatialMeasure::disk_lebesgue(lay, 2.0);
    FrustrationSpec fs;
    fs.ch[ChUpDir].enabled = true;
    fs.ch[ChUpDir].c = 0.05;
    fs.ch[ChUpDir].b = 0.4;
    MinimizerResult r = minimize_rate(m, mu, fs);
    REQUIRE(r.feasible);

    // hand construction: quadruple every cell of mu
    SpatialMeasure hand = mu;
    for (double& v : hand.mass) v *= 4.0;
    QosTable t = qos_table(m, hand, {false, true, false, false}, ThresholdScale::Qos);
    double mass = 0.0;
    for (std::size_t i = 0; i < hand.mass.size(); ++i)
        if (hand.mass[i] > 0.0 && t.ch[ChUpDir][i] < fs.ch[ChUpDir].c) mass += hand.mass[i];
    REQUIRE(mass > fs.ch[ChUpDir].b); // hand measure is feasible
    CHECK(r.entropy <= rel_entropy(hand, mu) + 1e-9);
}

TEST_CASE("infeasible constraints are reported, not silently dropped") {
    Model m = make_model(1.0);
    auto lay = CellLayout::triadic(Window(1.0), 1);
    SpatialMeasure mu = SpatialMeasure::disk_lebesgue(lay, 1.0);
    FrustrationSpec fs;
    fs.ch[ChUpDir].enabled = true;
    fs.ch[ChUpDir].c = 0.0; // nothing is ever strictly below zero
    fs.ch[ChUpDir].b = 0.5;
    MinimizeOptions opt;
    opt.restarts = 4;
    MinimizerResult r = minimize_rate(m, mu, fs, opt);
    CHECK(!r.feasible);
    CHECK(!r.converged);
    CHECK(r.constraint_residual > 0.0);
}

TEST_CASE("mobile grid smoke") {
    Model m = make_model(1.0);
    PathGrid g = PathGrid::make(Window(1.0), 1, 1.0);
    PathMeasure mu;
    mu.grid = g;
    mu.mass[DiscretePath{4, 4, 4}] = 0.7; // parked at the origin cell
    mu.mass[DiscretePath{0, 1, 2}] = 0.4; // moving along the bottom row

    FrustrationSpec fs;
    fs.ch[ChUpDir].enabled = true;
    fs.ch[ChUpDir].a = 0.5;
    fs.ch[ChUpDir].c = 0.2;
    fs.ch[ChUpDir].b = 0.3;
    MinimizeOptions opt;
    opt.restarts = 8;
    opt.workers = 2;
    MinimizerResult r = minimize_rate(m, mu, fs, opt);
    CHECK(r.feasible);
    CHECK(r.channel_mass[ChUpDir] > fs.ch[ChUpDir].b.value());
    CHECK(r.entropy > 0.0);
}
