#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "core/terrain.hpp"

using namespace rps;
using namespace rps::terrain;

namespace {

TerrainProfile parse(const std::string& body) {
    std::istringstream in("distance_m,elevation_m\n" + body);
    return load_profile(in);
}

LinkGeometry geom_25m(double length) {
    return {.tx_height_m = 25.0,
            .rx_height_m = 25.0,
            .frequency_MHz = 905.0,
            .polarization = Polarization::Vertical,
            .path_length_m = length};
}

// Independent straight-line interpolation oracle for the sightline test.
double sightline_height(const TerrainProfile& p, const LinkGeometry& g, double x) {
    const double tip_tx = p.points().front().elevation_m + g.tx_height_m;
    const double tip_rx = p.points().back().elevation_m + g.rx_height_m;
    return tip_tx + (tip_rx - tip_tx) * x / p.length_m();
}

}  // namespace

TEST_CASE("load_profile accepts a minimal flat profile") {
    const auto p = parse("0,100\n500,100\n1000,100\n");
    CHECK(p.size() == 3);
    CHECK(p.length_m() == 1000.0);
    CHECK(p.points()[1].elevation_m == 100.0);
}

TEST_CASE("load_profile rejects fewer than 3 points naming NPRFL") {
    try {
        parse("0,100\n500,95\n");
        FAIL("expected range_error");
    } catch (const range_error& e) {
        CHECK(e.variable() == "NPRFL");
    }
}

TEST_CASE("load_profile rejects out-of-range elevation naming HPRFL") {
    try {
        parse("0,100\n500,9500\n1000,100\n");
        FAIL("expected range_error");
    } catch (const range_error& e) {
        CHECK(e.variable() == "HPRFL");
    }
    CHECK_NOTHROW(parse("0,9000\n500,-450\n1000,0\n"));
}

TEST_CASE("load_profile reports the line number of a malformed row") {
    try {
        parse("0,100\n500,abc\n1000,100\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 3);  // header is line 1
    }
}

TEST_CASE("load_profile rejects non-increasing distances and bad headers") {
    CHECK_THROWS_AS(parse("0,100\n500,100\n500,100\n"), domain_error);
    std::istringstream bad("distance,height\n0,1\n");
    CHECK_THROWS_AS(load_profile(bad), parse_error);
}

TEST_CASE("profile serialization round-trips bit-identically") {
    const auto p = parse("0,100.25\n333.5,95.125\n1000,101.0625\n");
    std::ostringstream first;
    write_profile(p, first);
    std::istringstream back(first.str());
    const auto reloaded = load_profile(back);
    std::ostringstream second;
    write_profile(reloaded, second);
    CHECK(first.str() == second.str());
}

TEST_CASE("los_clearance sees over flat ground") {
    const auto p = parse("0,100\n500,100\n1000,100\n");
    const auto report = los_clearance(p, geom_25m(1000.0));
    CHECK(report.has_los);
}

TEST_CASE("los_clearance finds the blocking hill") {
    const auto p = parse("0,100\n500,200\n1000,100\n");
    const auto report = los_clearance(p, geom_25m(1000.0));
    REQUIRE_FALSE(report.has_los);
    REQUIRE(report.dominant_obstacle.has_value());
    CHECK(report.dominant_obstacle->d_T_m == doctest::Approx(500.0));
    CHECK(report.dominant_obstacle->d_R_m == doctest::Approx(500.0));
    // sightline height at the midpoint is 125 m
    CHECK(report.dominant_obstacle->h_m == doctest::Approx(75.0));
}

TEST_CASE("intrusion ties break toward the smaller distance") {
    const auto p = parse("0,100\n400,180\n600,180\n1000,100\n");
    const auto report = los_clearance(p, geom_25m(1000.0));
    REQUIRE(report.dominant_obstacle.has_value());
    CHECK(report.dominant_obstacle->d_T_m == doctest::Approx(400.0));
}

TEST_CASE("los_clearance rejects a path-length mismatch") {
    const auto p = parse("0,100\n500,100\n1000,100\n");
    CHECK_THROWS_AS(los_clearance(p, geom_25m(900.0)), domain_error);
}

TEST_CASE("antenna tips above the global maximum always clear") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> elev(0.0, 500.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ProfilePoint> pts;
        double max_elev = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double e = elev(rng);
            max_elev = std::max(max_elev, e);
            pts.push_back({i * 100.0, e});
        }
        TerrainProfile p(pts);
        LinkGeometry g = geom_25m(p.length_m());
        g.tx_height_m = max_elev - pts.front().elevation_m + 1.0;
        g.rx_height_m = max_elev - pts.back().elevation_m + 1.0;
        CHECK(los_clearance(p, g).has_los);
    }
}

TEST_CASE("dominant obstacle matches a brute-force scan") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> elev(0.0, 400.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ProfilePoint> pts;
        for (int i = 0; i < 25; ++i) {
            pts.push_back({i * 80.0, elev(rng)});
        }
        TerrainProfile p(pts);
        const auto g = geom_25m(p.length_m());
        const auto report = los_clearance(p, g);

        double best = -1.0e30;
        std::size_t best_idx = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double intr =
                pts[i].elevation_m - sightline_height(p, g, pts[i].distance_m);
            if (intr > best) {
                best = intr;
                best_idx = i;
            }
        }
        CHECK(report.has_los == (best < 0.0));
        if (report.dominant_obstacle.has_value()) {
            CHECK(report.dominant_obstacle->d_T_m ==
                  doctest::Approx(pts[best_idx].distance_m));
            CHECK(report.dominant_obstacle->h_m == doctest::Approx(best));
        }
    }
}

TEST_CASE("diffraction parameter worked values") {
    CHECK(diffraction_parameter({0.0, 1000.0, 1000.0}, 0.333) == 0.0);
    CHECK(diffraction_parameter({10.0, 1000.0, 1000.0}, 0.333) ==
          doctest::Approx(1.095993248702382).epsilon(1e-12));
    CHECK(diffraction_parameter({-5.0, 1000.0, 1000.0}, 0.333) ==
          doctest::Approx(-0.547996624351191).epsilon(1e-12));
}

TEST_CASE("diffraction parameter is scale invariant") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 100.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double h = u(rng) - 50.0;
        const double dt = u(rng) * 50.0;
        const double dr = u(rng) * 50.0;
        const double lam = u(rng) * 0.01;
        const double s = u(rng);
        const double base = diffraction_parameter({h, dt, dr}, lam);
        const double scaled = diffraction_parameter({h * s, dt * s, dr * s}, lam * s);
        CHECK(scaled == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("diffraction parameter rejects bad geometry") {
    CHECK_THROWS_AS(diffraction_parameter({1.0, 0.0, 500.0}, 0.333), domain_error);
    CHECK_THROWS_AS(diffraction_parameter({1.0, 500.0, 500.0}, 0.0), domain_error);
}

TEST_CASE("link geometry validity ranges") {
    auto g = geom_25m(1000.0);
    CHECK_NOTHROW(g.validate());
    g.frequency_MHz = 25000.0;
    CHECK_THROWS_AS(g.validate(), range_error);
    g.frequency_MHz = 905.0;
    g.tx_height_m = 0.0;
    CHECK_THROWS_AS(g.validate(), range_error);
}
