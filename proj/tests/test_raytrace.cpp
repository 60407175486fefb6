#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "uavsim/error.hpp"
#include "uavsim/raytrace.hpp"

using namespace uavsim;

namespace {

Band band30() { return {"f1", 30e9, 100e6}; }
Band band60() { return {"f2", 60e9, 100e6}; }

Scene empty_scene() {
    return Scene({}, default_materials(), {{-500, -500, 0}, {500, 500, 300}});
}

Scene wall_scene() {
    // one tall slab acting as a wall at x in [50, 60]
    std::vector<Building> b = {{50, 60, -200, 200, 250, 0}};
    return Scene(std::move(b), default_materials(),
                 {{-500, -500, 0}, {500, 500, 300}});
}

}  // namespace

TEST_CASE("fspl reference values") {
    CHECK(fspl(100, 30e9) == doctest::Approx(101.98).epsilon(1e-4));
    CHECK(fspl(100, 60e9) == doctest::Approx(108.00).epsilon(1e-4));
    CHECK(fspl(100, 60e9) - fspl(100, 30e9) ==
          doctest::Approx(20 * std::log10(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(fspl(0, 30e9), InvalidParameterError);
    CHECK_THROWS_AS(fspl(-5, 30e9), InvalidParameterError);
}

TEST_CASE("fspl distance doubling adds 6.0206 dB") {
    double delta = fspl(240, 28e9) - fspl(120, 28e9);
    CHECK(std::abs(delta - 20 * std::log10(2.0)) < 1e-9);
}

TEST_CASE("enumerate_paths: empty scene LOS only") {
    Scene s = empty_scene();
    auto paths = enumerate_paths(s, {0, 0, 50}, {100, 0, 50}, 0);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].total_length == doctest::Approx(100.0));
    CHECK(paths[0].order() == 0);
}

TEST_CASE("enumerate_paths input checks") {
    Scene s = empty_scene();
    CHECK_THROWS_AS(enumerate_paths(s, {0, 0, 50}, {0, 0, 50}, 1),
                    InvalidParameterError);
    CHECK_THROWS_AS(enumerate_paths(s, {0, 0, 50}, {1, 0, 50}, 4),
                    InvalidParameterError);
}

TEST_CASE("single wall: first-order image path has the image length") {
    Scene s = wall_scene();
    Vec3 tx{0, -30, 100}, rx{0, 30, 100};
    auto paths = enumerate_paths(s, tx, rx, 1);
    // LOS + wall bounce + ground bounce
    REQUIRE(paths.size() == 3);
    Vec3 wall_image{100, -30, 100};  // mirrored across x = 50
    Vec3 ground_image{0, -30, -100};
    std::vector<double> lengths;
    for (const auto& p : paths) lengths.push_back(p.total_length);
    std::sort(lengths.begin(), lengths.end());
    std::vector<double> expect = {distance(tx, rx), distance(wall_image, rx),
                                  distance(ground_image, rx)};
    std::sort(expect.begin(), expect.end());
    for (int i = 0; i < 3; ++i)
        CHECK(lengths[i] == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("image method equals brute-force enumeration on a small scene") {
    std::vector<Building> b = {
        {20, 40, -30, -10, 60, 0},
        {-50, -35, 10, 40, 45, 1},
    };
    Scene s(std::move(b), default_materials(),
            {{-100, -100, 0}, {100, 100, 150}});
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> pos(-90, 90), zc(2, 100);
    for (int i = 0; i < 100; ++i) {
        Vec3 tx{pos(rng), pos(rng), zc(rng)};
        Vec3 rx{pos(rng), pos(rng), zc(rng)};
        if (s.inside_building(tx) || s.inside_building(rx)) continue;
        auto got = enumerate_paths(s, tx, rx, 2);
        auto want = oracles::brute_force_path_lengths(s, tx, rx, 2);
        REQUIRE(got.size() == want.size());
        std::vector<double> gl;
        for (const auto& p : got) gl.push_back(p.total_length);
        std::sort(gl.begin(), gl.end());
        std::sort(want.begin(), want.end());
        for (std::size_t k = 0; k < gl.size(); ++k)
            CHECK(gl[k] == doctest::Approx(want[k]).epsilon(1e-9));
    }
}

TEST_CASE("path geometry reciprocity") {
    Scene s = wall_scene();
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> pos(-150, 150), zc(2, 150);
    for (int i = 0; i < 50; ++i) {
        Vec3 a{pos(rng), pos(rng), zc(rng)};
        Vec3 b{pos(rng), pos(rng), zc(rng)};
        if (s.inside_building(a) || s.inside_building(b)) continue;
        auto fwd = enumerate_paths(s, a, b, 2);
        auto rev = enumerate_paths(s, b, a, 2);
        REQUIRE(fwd.size() == rev.size());
        std::vector<double> lf, lr;
        std::vector<int> of, orr;
        for (const auto& p : fwd) lf.push_back(p.total_length);
        for (const auto& p : rev) lr.push_back(p.total_length);
        std::sort(lf.begin(), lf.end());
        std::sort(lr.begin(), lr.end());
        for (std::size_t k = 0; k < lf.size(); ++k)
            CHECK(lf[k] == doctest::Approx(lr[k]).epsilon(1e-9));
    }
}

TEST_CASE("higher max_order is a superset") {
    Scene s = wall_scene();
    Vec3 tx{-50, -50, 20}, rx{-20, 60, 30};
    auto p1 = enumerate_paths(s, tx, rx, 1);
    auto p2 = enumerate_paths(s, tx, rx, 2);
    CHECK(p2.size() >= p1.size());
    for (const auto& a : p1) {
        bool found = false;
        for (const auto& b : p2)
            if (a.reflection_faces == b.reflection_faces) found = true;
        CHECK(found);
    }
}

TEST_CASE("reflection points satisfy the specular law and lie on faces") {
    Scene s = wall_scene();
    auto paths = enumerate_paths(s, {-40, -60, 30}, {-10, 80, 40}, 2);
    for (const auto& p : paths) {
        for (std::size_t r = 0; r < p.reflection_faces.size(); ++r) {
            const Face& f = s.faces()[p.reflection_faces[r]];
            const Vec3& pt = p.vertices[r + 1];
            CHECK(std::abs(pt[f.axis] - f.plane) < 1e-6);
            CHECK(f.in_rect(pt, 1e-6));
            Vec3 in = (pt - p.vertices[r]).normalized();
            Vec3 out = (p.vertices[r + 2] - pt).normalized();
            Vec3 n = f.normal();
            // angle of incidence = angle of reflection
            CHECK(std::abs(std::abs(in.dot(n)) - std::abs(out.dot(n))) < 1e-6);
            // incoming and outgoing are mirror images through the plane
            Vec3 reflected = in - n * (2.0 * in.dot(n));
            CHECK(std::abs(reflected.x - out.x) < 1e-6);
            CHECK(std::abs(reflected.y - out.y) < 1e-6);
            CHECK(std::abs(reflected.z - out.z) < 1e-6);
        }
    }
}

TEST_CASE("path_gain composes fspl and reflection losses") {
    Scene s = wall_scene();
    PropagationPath los;
    los.vertices = {{0, 0, 50}, {100, 0, 50}};
    los.total_length = 100;
    CHECK(path_gain(s, los, band30()) == doctest::Approx(-101.98).epsilon(1e-4));

    // one concrete bounce, 10 dB at f1 by the default table
    PropagationPath bounce = los;
    bounce.reflection_faces = {0};  // first wall face, concrete
    CHECK(path_gain(s, bounce, band30()) ==
          doctest::Approx(-111.98).epsilon(1e-4));
    CHECK(path_gain(s, bounce, band30()) < path_gain(s, los, band30()));
}

TEST_CASE("received power: link budget, path doubling, blocked rx") {
    Scene s = empty_scene();
    Transmitter tx;
    tx.id = "t";
    tx.position = {0, 0, 50};
    tx.band_id = "f1";
    tx.tx_power_dbm = 40.0;  // 10 W
    tx.pattern = isotropic_pattern();
    auto p = received_power_dbm(tx, {100, 0, 50}, isotropic_pattern(), {}, s,
                                band30(), 0);
    REQUIRE(p.has_value());
    CHECK(*p == doctest::Approx(40.0 - fspl(100, 30e9)).epsilon(1e-9));

    // fully enclosed receiver: box of four walls + roof around the point
    std::vector<Building> box = {
        {90, 95, -20, 20, 100, 0},
        {105, 110, -20, 20, 100, 0},
        {95, 105, -20, -15, 100, 0},
        {95, 105, 15, 20, 100, 0},
        {90, 110, -20, 20, 100, 0},
    };
    Scene enclosed(std::move(box), default_materials(),
                   {{-500, -500, 0}, {500, 500, 300}});
    auto none = received_power_dbm(tx, {100, 0, 50}, isotropic_pattern(), {},
                                   enclosed, band30(), 2);
    CHECK(!none.has_value());
}

TEST_CASE("two equal paths add 3.01 dB") {
    // symmetric corridor: walls either side so the two first-order wall
    // bounces are congruent; compare against hand-summed linear power
    std::vector<Building> b = {{-200, 200, 30, 40, 200, 0},
                               {-200, 200, -40, -30, 200, 0}};
    Scene s(std::move(b), default_materials(),
            {{-500, -500, 0}, {500, 500, 300}});
    Vec3 tx{-50, 0, 100}, rx{50, 0, 100};
    auto paths = enumerate_paths(s, tx, rx, 1);
    double mw = 0;
    double side_mw = 0;
    int side_count = 0;
    for (const auto& p : paths) {
        double g = path_gain(s, p, band30());
        mw += std::pow(10.0, (40.0 + g) / 10.0);
        if (p.order() == 1 && p.reflection_faces.size() == 1) {
            const Face& f = s.faces()[p.reflection_faces[0]];
            if (f.axis == 1) {
                side_mw += std::pow(10.0, (40.0 + g) / 10.0);
                ++side_count;
            }
        }
    }
    REQUIRE(side_count == 2);
    // the two side bounces are congruent: summing both is one + 3.0103 dB
    double one = side_mw / 2;
    CHECK(10 * std::log10(side_mw) - 10 * std::log10(one) ==
          doctest::Approx(10 * std::log10(2.0)).epsilon(1e-9));

    Transmitter t;
    t.position = tx;
    t.band_id = "f1";
    t.tx_power_dbm = 40.0;
    t.pattern = isotropic_pattern();
    auto total = received_power_dbm(t, rx, isotropic_pattern(), {}, s, band30(), 1);
    REQUIRE(total.has_value());
    CHECK(*total == doctest::Approx(10 * std::log10(mw)).epsilon(1e-9));
}

TEST_CASE("received power decreases with distance in an empty scene") {
    Scene s = empty_scene();
    Transmitter tx;
    tx.position = {0, 0, 50};
    tx.band_id = "f1";
    tx.tx_power_dbm = 40.0;
    tx.pattern = isotropic_pattern();
    double prev = 1e9;
    for (double d = 10; d <= 400; d += 30) {
        auto p = received_power_dbm(tx, {d, 0, 50}, isotropic_pattern(), {}, s,
                                    band30(), 0);
        REQUIRE(p.has_value());
        CHECK(*p < prev);
        prev = *p;
    }
    (void)band60;
}
