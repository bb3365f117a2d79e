#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "swe1d/model.hpp"

using namespace swe1d;

namespace {
const double kNaN = std::numeric_limits<double>::quiet_NaN();
}

TEST_CASE("bed slope balances the mean shear stress") {
    ChannelGeometry g;
    CHECK(bed_slope(g, 1.74) ==
          doctest::Approx(1.329 * 366.4 / (1000.0 * 10.0 * 1.74)).epsilon(1e-15));
    CHECK(bed_slope(g, 1.74) == doctest::Approx(0.0279853793103448).epsilon(1e-12));
    // inversely proportional to the wetted area
    CHECK(bed_slope(g, 0.87) == doctest::Approx(2.0 * bed_slope(g, 1.74)).epsilon(1e-15));
    CHECK_THROWS_AS(bed_slope(g, 0.0), std::domain_error);
    CHECK_THROWS_AS(bed_slope(g, -1.0), std::domain_error);
    CHECK_THROWS_AS(bed_slope(g, kNaN), std::domain_error);
}

TEST_CASE("conveyance matches the Manning formula") {
    ChannelGeometry g;
    CHECK(conveyance(g, 1.74) == doctest::Approx(2.929935300121532).epsilon(1e-13));

    ChannelGeometry unit;
    unit.n1 = 1.49;
    unit.P = 1.0;
    CHECK(conveyance(unit, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(conveyance(g, 0.0), std::domain_error);
}

TEST_CASE("friction slope equals Q|Q| over the squared conveyance") {
    ChannelGeometry g;
    CHECK(friction_slope(g, 1.74, 0.1) == doctest::Approx(0.001164887378073639).epsilon(1e-13));

    // identity against the conveyance on a sweep of states
    for (double A : {0.3, 1.0, 1.74, 5.0}) {
        for (double Q : {-2.0, -0.1, 0.0, 0.1, 2.0}) {
            const double K = conveyance(g, A);
            CHECK(friction_slope(g, A, Q) == doctest::Approx(Q * std::fabs(Q) / (K * K))
                                                 .epsilon(1e-12));
        }
    }
    // odd in Q
    CHECK(friction_slope(g, 1.0, -0.4) == doctest::Approx(-friction_slope(g, 1.0, 0.4)));
    CHECK_THROWS_AS(friction_slope(g, -0.5, 0.1), std::domain_error);
}

TEST_CASE("rainfall is constant inside its window and zero outside") {
    RainfallSpec r;
    r.I = 1.18e-5;
    r.t0 = 0.0;
    r.t1 = 1.0;
    r.x_lo = 0.0;
    r.x_hi = 1.0;
    r.lateral_scale = 1.0;
    CHECK(rainfall_at(r, 0.5, 0.5) == 1.18e-5);
    CHECK(rainfall_at(r, 0.0, 0.0) == 1.18e-5);  // boundaries inclusive
    CHECK(rainfall_at(r, 1.0, 1.0) == 1.18e-5);
    CHECK(rainfall_at(r, 1.0000001, 0.5) == 0.0);
    CHECK(rainfall_at(r, 0.5, -0.1) == 0.0);
    CHECK(rainfall_at(r, -0.1, 0.5) == 0.0);

    r.lateral_scale = 348.0;
    CHECK(rainfall_at(r, 0.5, 0.5) == doctest::Approx(1.18e-5 * 348.0).epsilon(1e-15));

    RainfallSpec none;
    none.lateral_scale = 1.0;
    CHECK(rainfall_at(none, 0.0, 0.0) == 0.0);
}

TEST_CASE("grid construction checks divisibility and computes counts") {
    const GridSpec g = GridSpec::make(1.0, 1.0, 1.0 / 16, 1.0 / 128);
    CHECK(g.M == 16);
    CHECK(g.N == 128);
    CHECK(g.x(16) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.t(128) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.lambda() == doctest::Approx(0.125).epsilon(1e-15));

    const GridSpec flume = GridSpec::make(1150.0, 1.0, 5.75, 1.0 / 128);
    CHECK(flume.M == 200);

    CHECK_THROWS_AS(GridSpec::make(1.0, 1.0, 0.03, 1.0 / 128), config_error);
    CHECK_THROWS_AS(GridSpec::make(1.0, 1.0, 1.0 / 16, 0.3), config_error);
    CHECK_THROWS_AS(GridSpec::make(1.0, 1.0, -0.1, 0.1), config_error);
    CHECK_THROWS_AS(GridSpec::make(0.0, 1.0, 0.1, 0.1), config_error);

    // zero horizon means a single stored level
    const GridSpec frozen = GridSpec::make(1.0, 0.0, 0.5, 0.25);
    CHECK(frozen.N == 0);
}

TEST_CASE("geometry and scenario validation reject bad values") {
    ChannelGeometry g;
    g.n1 = 0.0;
    CHECK_THROWS_AS(g.validate(), config_error);
    g = ChannelGeometry{};
    g.T = -1.0;
    CHECK_THROWS_AS(g.validate(), config_error);
    CHECK_NOTHROW(ChannelGeometry{}.validate());

    Scenario sc;
    sc.grid = GridSpec::make(1.0, 1.0, 0.5, 0.5);
    sc.rainfall.lateral_scale = 1.0;
    sc.initial.A = {1.0, 1.0, 1.0};
    sc.initial.Q = {0.0, 0.0, 0.0};
    CHECK_NOTHROW(sc.validate());

    Scenario bad = sc;
    bad.initial.A = {1.0};  // wrong node count
    CHECK_THROWS_AS(bad.validate(), config_error);

    bad = sc;
    bad.A_min = 0.0;
    CHECK_THROWS_AS(bad.validate(), config_error);

    bad = sc;
    bad.boundary_mode = BoundaryMode::analytic_dirichlet;  // no sampler provided
    CHECK_THROWS_AS(bad.validate(), config_error);

    bad = sc;
    bad.rainfall.lateral_scale = kNaN;  // unresolved width
    CHECK_THROWS_AS(bad.validate(), config_error);
}
