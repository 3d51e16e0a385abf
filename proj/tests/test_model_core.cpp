#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "relnet/entropy.hpp"
#include "relnet/model.hpp"
#include "relnet/rng.hpp"

using namespace relnet;
using oracle::kPi;

namespace {

Model make_model(double r = 5.0, bool bs = false) {
    return Model(Window(r), PathLoss::min_power(1.0, 4.0), QosMap::min_cap(1.0), bs);
}

SpatialMeasure random_measure(std::shared_ptr<const CellLayout> lay, SplitMix64& rng,
                              double scale = 1.0, double sparsity = 0.3) {
    SpatialMeasure m(lay);
    for (double& v : m.mass)
        if (rng.uniform01() > sparsity) v = scale * rng.uniform01();
    return m;
}

} // namespace

TEST_CASE("path loss families") {
    PathLoss p4 = PathLoss::min_power(1.0, 4.0);
    CHECK(p4(0.0) == 1.0);
    CHECK(p4(0.5) == 1.0);
    CHECK(p4(2.0) == doctest::Approx(1.0 / 16.0));
    CHECK(p4.eval_sq(4.0) == doctest::Approx(1.0 / 16.0));
    CHECK(p4.lipschitz() == doctest::Approx(4.0));

    // Lipschitz bound on sampled pairs
    SplitMix64 rng(1);
    for (int i = 0; i < 2000; ++i) {
        double s = rng.uniform(0.0, 14.0), t = rng.uniform(0.0, 14.0);
        CHECK(std::abs(p4(s) - p4(t)) <= p4.lipschitz() * std::abs(s - t) + 1e-12);
        CHECK(p4(s) > 0.0);
    }

    PathLoss pc = PathLoss::constant(0.7);
    CHECK(pc(3.0) == 0.7);
    CHECK(pc.lipschitz() == 0.0);

    // certified extrema over [0, diam]
    PathLossExtrema ex = certify_extrema(p4, 10.0 * std::sqrt(2.0));
    CHECK(ex.ell_max == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ex.ell_min == doctest::Approx(std::pow(10.0 * std::sqrt(2.0), -4.0)).epsilon(1e-6));
}

TEST_CASE("qos map families") {
    QosMap g = QosMap::min_cap(2.0);
    CHECK(g.c_plus() == 2.0);
    CHECK(g.rho_plus() == 2.0);
    CHECK(g(0.5) == 0.5);
    CHECK(g(5.0) == 2.0);
    CHECK(g(std::numeric_limits<double>::infinity()) == 2.0);
    CHECK(g.inverse(0.5) == 0.5);

    QosMap sh = QosMap::shannon_cap(1.0);
    CHECK(sh(std::expm1(0.3)) == doctest::Approx(0.3));
    CHECK(sh(100.0) == 1.0);
    CHECK(sh.inverse(0.3) == doctest::Approx(std::expm1(0.3)));

    // strictly increasing below rho_plus
    SplitMix64 rng(2);
    for (int i = 0; i < 500; ++i) {
        double a = rng.uniform(0.0, sh.rho_plus());
        double b = rng.uniform(0.0, sh.rho_plus());
        if (a > b) std::swap(a, b);
        if (a < b) CHECK(sh(a) < sh(b));
    }
}

TEST_CASE("beta_o threshold") {
    Model m = make_model(5.0);
    double expect = std::min(1.0, m.ell_min() / (m.g().rho_plus() * m.ell_max()));
    CHECK(m.beta_o() == doctest::Approx(expect));
}

TEST_CASE("interference on point configurations") {
    Model m = make_model(5.0);
    PointConfig cfg;
    cfg.lambda = 1.0;
    cfg.points = {{0.0, 0.0}};
    CHECK(m.interference({0, 0}, cfg) == doctest::Approx(1.0)); // ell(0) = 1, one summand

    cfg.points = {{1.0, 0.0}, {0.0, 2.0}};
    CHECK(m.interference({0, 0}, cfg) == doctest::Approx(1.0 + 1.0 / 16.0));

    cfg.points.clear();
    CHECK(m.interference({1, 1}, cfg) == 0.0);

    // base-station flag adds one transmitter at the origin
    Model mb = make_model(5.0, true);
    CHECK(mb.interference({2.0, 0.0}, cfg) == doctest::Approx(1.0 / 16.0));
}

TEST_CASE("interference against the flat disk measure matches quadrature") {
    Model m = make_model(5.0);
    auto lay = CellLayout::triadic(Window(5.0), 5); // 243 x 243 cells
    SpatialMeasure nu = SpatialMeasure::disk_lebesgue(lay, 5.0);

    double got = m.interference({5.0, 0.0}, nu);
    double want = oracle::disk_integral_cartesian(m.ell(), 5.0, {5.0, 0.0});
    CHECK(got == doctest::Approx(want).epsilon(0.01));

    // resulting boundary SIR is the known limiting value
    double s = m.sir({0.0, 0.0}, {5.0, 0.0}, nu);
    CHECK(s == doctest::Approx(5.5e-4).epsilon(0.03));
}

TEST_CASE("sir basics and the radial closed form") {
    Model m = make_model(5.0);
    auto lay = CellLayout::triadic(Window(5.0), 1);
    SpatialMeasure delta_o(lay);
    delta_o.mass[lay->snap({0, 0})] = 1.0;
    CHECK(m.sir({0, 0}, {0, 0}, delta_o) == doctest::Approx(1.0));

    auto fine = CellLayout::triadic(Window(5.0), 5);
    SpatialMeasure nu = SpatialMeasure::disk_lebesgue(fine, 5.0);
    double want = std::pow(5.0, -4.0) / (kPi * 49.0 / 25.0);
    CHECK(m.sir({5.0, 0.0}, {0.0, 0.0}, nu) == doctest::Approx(want).epsilon(0.01));

    SpatialMeasure zero(lay);
    CHECK(std::isinf(m.sir({1, 0}, {0, 0}, zero)));
    CHECK(m.qos_direct({1, 0}, {0, 0}, zero) == m.g().c_plus());
}

TEST_CASE("qos_direct plateau at small mass") {
    Model m = make_model(5.0);
    auto lay = CellLayout::triadic(Window(5.0), 2);
    SplitMix64 rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        SpatialMeasure nu = random_measure(lay, rng);
        double total = nu.total();
        if (total == 0.0) continue;
        double scale = m.beta_o() * 0.999 / total;
        for (double& v : nu.mass) v *= scale;
        Vec2 xi{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        Vec2 eta{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        CHECK(m.qos_direct(xi, eta, nu) == m.g().c_plus());
        CHECK(m.qos_relay_link(xi, {0, 0}, eta, nu) == m.g().c_plus());
        CHECK(m.qos_relayed_uplink(xi, nu) == m.g().c_plus());
    }
}

TEST_CASE("qos below cap follows the identity map") {
    // constant path loss: SIR = 1/mass; min-cap g is the identity below K
    Model m(Window(1.0), PathLoss::constant(1.0), QosMap::min_cap(2.0));
    auto lay = CellLayout::triadic(Window(1.0), 1);
    SpatialMeasure nu(lay);
    nu.mass[4] = 2.0;
    CHECK(m.qos_direct({0.5, 0.5}, {-0.5, -0.5}, nu) == doctest::Approx(0.5));
}

TEST_CASE("relay link against the scalar calculator") {
    Model m = make_model(5.0);
    PointConfig cfg;
    cfg.lambda = 1.0;
    cfg.points = {{1, 0}, {2, 0}, {4, 0}};

    oracle::TinyConfig tiny{{{1, 0}, {2, 0}, {4, 0}}, {1, 1, 1}, &m.ell(), &m.g()};
    double got = m.qos_relay_link({4, 0}, {2, 0}, {0, 0}, cfg);
    CHECK(got == doctest::Approx(tiny.Gamma({4, 0}, {2, 0}, {0, 0})).epsilon(1e-12));

    // relaying via the receiver itself never beats the direct link
    double via_eta = m.qos_relay_link({4, 0}, {0, 0}, {0, 0}, cfg);
    CHECK(via_eta == doctest::Approx(m.qos_direct({4, 0}, {0, 0}, cfg)).epsilon(1e-12));
}

TEST_CASE("relayed uplink and downlink") {
    Model m = make_model(5.0);

    SUBCASE("self relay never beats direct") {
        PointConfig cfg;
        cfg.lambda = 1.0;
        cfg.points = {{3.0, 1.0}};
        CHECK(m.qos_relayed_uplink({3.0, 1.0}, cfg) ==
              doctest::Approx(m.qos_direct({3.0, 1.0}, {0, 0}, cfg)).epsilon(1e-12));
    }

    SUBCASE("midpoint relay helps when both hops beat direct") {
        auto lay = CellLayout::triadic(Window(5.0), 2);
        SpatialMeasure nu(lay);
        std::size_t c_origin = lay->snap({0.0, 0.0});
        std::size_t c_relay = lay->snap({2.0, 0.0});
        nu.mass[c_origin] = 1.0; // interference sits at the origin cell
        nu.mass[c_relay] = 0.4;
        Vec2 xi{4.4, 0.0};
        double direct = m.qos_direct(xi, {0, 0}, nu);
        double relayed = m.qos_relayed_uplink(xi, nu);
        oracle::TinyConfig tiny{{lay->center(c_origin), lay->center(c_relay)},
                                {1.0, 0.4},
                                &m.ell(),
                                &m.g()};
        CHECK(relayed == doctest::Approx(tiny.R_up(xi)).epsilon(1e-12));
        CHECK(relayed > direct);
    }

    SUBCASE("downlink brute force over cells") {
        auto lay = CellLayout::triadic(Window(5.0), 2);
        SpatialMeasure nu(lay);
        SplitMix64 rng(11);
        std::vector<Vec2> pos;
        std::vector<double> w;
        for (int k = 0; k < 3; ++k) {
            std::size_t c = static_cast<std::size_t>(rng.uniform01() * lay->size());
            nu.mass[c] += 0.5 + rng.uniform01();
            pos.push_back(lay->center(c));
            w.push_back(nu.mass[c]);
        }
        // rebuild weights to match accumulated cells
        pos.clear();
        w.clear();
        for (std::size_t i = 0; i < lay->size(); ++i) {
            if (nu.mass[i] > 0.0) {
                pos.push_back(lay->center(i));
                w.push_back(nu.mass[i]);
            }
        }
        oracle::TinyConfig tiny{pos, w, &m.ell(), &m.g()};
        Vec2 xi{3.3, -2.1};
        CHECK(m.qos_relayed_downlink(xi, nu) == doctest::Approx(tiny.R_down(xi)).epsilon(1e-12));
        CHECK(m.qos_relayed_uplink(xi, nu) == doctest::Approx(tiny.R_up(xi)).epsilon(1e-12));
    }

    SUBCASE("uplink and downlink agree under midpoint reflection symmetry") {
        // configuration invariant under x -> xi - x swaps the two link
        // directions, so R(xi, o) = R(o, xi)
        Vec2 xi{3.6, 0.0};
        std::vector<Vec2> pos{{1.2, 0.9}, {2.4, -0.9}, {1.8, 0.0}};
        std::vector<double> w{0.7, 0.7, 0.4};
        AtomView nu{pos, w};
        CHECK(m.qos_relayed_uplink(xi, nu) ==
              doctest::Approx(m.qos_relayed_downlink(xi, nu)).epsilon(1e-12));
    }
}

TEST_CASE("monotonicity in the measure") {
    Model m = make_model(2.0);
    auto lay = CellLayout::triadic(Window(2.0), 2);
    SplitMix64 rng(17);
    for (int rep = 0; rep < 150; ++rep) {
        SpatialMeasure nu = random_measure(lay, rng, 0.8);
        SpatialMeasure nup = nu;
        // grow some already-positive cells: equal zero sets
        bool grew = false;
        for (double& v : nup.mass) {
            if (v > 0.0 && rng.uniform01() < 0.5) {
                v += rng.uniform01();
                grew = true;
            }
        }
        Vec2 xi{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Vec2 eta{rng.uniform(-2, 2), rng.uniform(-2, 2)};

        // (i) direct monotone
        CHECK(m.qos_direct(xi, eta, nup) <= m.qos_direct(xi, eta, nu));
        // (iii) relayed monotone under equal zero sets
        CHECK(m.qos_relayed_uplink(xi, nup) <= m.qos_relayed_uplink(xi, nu));
        CHECK(m.qos_relayed_downlink(xi, nup) <= m.qos_relayed_downlink(xi, nu));

        // (ii)/(iv) strict when strictly larger and below the cap
        if (grew) {
            double dp = m.qos_direct(xi, eta, nup);
            if (dp < m.g().c_plus()) CHECK(dp < m.qos_direct(xi, eta, nu));
            double rp = m.qos_relayed_uplink(xi, nup);
            if (rp < m.g().c_plus()) CHECK(rp < m.qos_relayed_uplink(xi, nu));
        }
        // relay dominance
        CHECK(m.qos_relayed_uplink(xi, nu) >= m.qos_direct(xi, {0, 0}, nu));
        CHECK(m.qos_relayed_downlink(xi, nu) >= m.qos_direct({0, 0}, xi, nu));
    }
}

TEST_CASE("lower-semicontinuity direction: a fresh relay only helps in the limit") {
    Model m = make_model(5.0);
    auto lay = CellLayout::triadic(Window(5.0), 2);
    SpatialMeasure base(lay);
    base.mass[lay->snap({0.2, 0.2})] = 1.0; // interference near the origin
    Vec2 xi{4.4, 0.0};
    double r_base = m.qos_relayed_uplink(xi, base);
    double prev = 0.0;
    for (int n : {1, 4, 16, 64, 256}) {
        SpatialMeasure nun = base;
        nun.mass[lay->snap({2.2, 0.0})] = 1.0 / n; // fresh relay cell
        double rn = m.qos_relayed_uplink(xi, nun);
        CHECK(rn >= r_base - 1e-12);
        prev = rn;
    }
    // with the extra relay available the limit value strictly exceeds R(base)
    CHECK(prev > r_base);
}

TEST_CASE("batched table agrees with one-off operations") {
    Model m = make_model(5.0);
    SplitMix64 rng(23);
    PointConfig cfg;
    cfg.lambda = 7.0;
    for (int i = 0; i < 40; ++i) {
        double x = rng.uniform(-5, 5), y = rng.uniform(-5, 5);
        cfg.points.push_back({x, y});
    }
    QosTable tab = qos_table(m, cfg, {true, true, true, true}, ThresholdScale::Qos);
    for (std::size_t i = 0; i < cfg.points.size(); ++i) {
        Vec2 p = cfg.points[i];
        CHECK(tab.ch[ChUpDir][i] == doctest::Approx(m.qos_direct(p, {0, 0}, cfg)).epsilon(1e-12));
        CHECK(tab.ch[ChDownDir][i] ==
              doctest::Approx(m.qos_direct({0, 0}, p, cfg)).epsilon(1e-12));
        CHECK(tab.ch[ChUp][i] == doctest::Approx(m.qos_relayed_uplink(p, cfg)).epsilon(1e-12));
        CHECK(tab.ch[ChDown][i] ==
              doctest::Approx(m.qos_relayed_downlink(p, cfg)).epsilon(1e-12));
    }
}
