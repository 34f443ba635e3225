// Copyright 2026 The beamqubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "beamqubo/errors.hpp"
#include "beamqubo/geometry.hpp"
#include "doctest.h"

using namespace beamqubo;

namespace {

/// Angle between look vectors via the plain dot-product formula.
double dot_angle(const GeoPoint& s, const GeoPoint& u, const GeoPoint& v) {
    auto ecef = [](const GeoPoint& p) {
        const double r = 6371.0 + p.altitude_km;
        const double la = p.latitude_deg * 3.14159265358979323846 / 180.0, lo = p.longitude_deg * 3.14159265358979323846 / 180.0;
        return std::array<double, 3>{r * std::cos(la) * std::cos(lo), r * std::cos(la) * std::sin(lo),
                                     r * std::sin(la)};
    };
    const auto S = ecef(s), U = ecef(u), V = ecef(v);
    double a[3], b[3], dot = 0, na = 0, nb = 0;
    for (int k = 0; k < 3; ++k) {
        a[k] = U[k] - S[k];
        b[k] = V[k] - S[k];
        dot += a[k] * b[k];
        na += a[k] * a[k];
        nb += b[k] * b[k];
    }
    return std::acos(std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0));
}

UserSet users_at(std::initializer_list<GeoPoint> pts) {
    UserSet s;
    int k = 0;
    for (const auto& p : pts) s.users.push_back({"u" + std::to_string(k++), p});
    return s;
}

}  // namespace

TEST_CASE("to_ecef on the axes") {
    auto p = to_ecef({0, 0, 0});
    CHECK(p[0] == doctest::Approx(6371.0));
    CHECK(std::abs(p[1]) < 1e-9);
    CHECK(std::abs(p[2]) < 1e-9);

    p = to_ecef({90, 0, 0});
    CHECK(std::abs(p[0]) < 1e-9);
    CHECK(std::abs(p[1]) < 1e-9);
    CHECK(p[2] == doctest::Approx(6371.0));

    p = to_ecef({0, 0, 1110});
    CHECK(p[0] == doctest::Approx(7481.0));
}

TEST_CASE("to_ecef rejects out-of-range coordinates") {
    CHECK_THROWS_AS(to_ecef({91, 0, 0}), ValidationError);
    CHECK_THROWS_AS(to_ecef({0, 181, 0}), ValidationError);
    CHECK_THROWS_AS(to_ecef({0, 0, -1}), ValidationError);
    CHECK_THROWS_AS(to_ecef({std::nan(""), 0, 0}), ValidationError);
}

TEST_CASE("angular separation basics") {
    const GeoPoint sat{0, 0, 1110};
    const GeoPoint u{0, 1, 0}, v{0, -1, 0}, mid{0, 0, 0};
    CHECK(angular_separation(sat, u, u) == 0.0);
    CHECK(angular_separation(sat, u, v) ==
          doctest::Approx(2.0 * angular_separation(sat, u, mid)).epsilon(1e-12));
    CHECK_THROWS_AS(angular_separation({0, 0, 0}, {0, 0, 0}, u), DegenerateGeometryError);
}

TEST_CASE("angular separation matches the dot-product oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lat(15, 35), lon(-100, -75);
    const GeoPoint sat{26.812309, -85.386382, 1110};
    for (int t = 0; t < 200; ++t) {
        const GeoPoint u{lat(rng), lon(rng), 0}, v{lat(rng), lon(rng), 0};
        const double got = angular_separation(sat, u, v);
        CHECK(std::abs(got - dot_angle(sat, u, v)) < 1e-12);
        CHECK(std::abs(got - angular_separation(sat, v, u)) < 1e-12);
    }
}

TEST_CASE("proximity graph examples") {
    SatelliteGeometry geom{{0, 0, 1110}, deg_to_rad(5.0)};
    auto g1 = build_proximity_graph(users_at({{0, 0, 0}}), geom);
    CHECK(g1.num_vertices() == 1);
    CHECK(g1.num_edges() == 0);

    geom.cone_angle_rad = 1e-9;
    auto g2 = build_proximity_graph(users_at({{10, 10, 0}, {10, 10, 0}}), geom);
    CHECK(g2.adjacent(0, 1));

    // three users on the equator; pick alpha between the neighbour and far separations
    const GeoPoint sat{0, 0.5, 1110};
    const GeoPoint a{0, 0, 0}, b{0, 0.5, 0}, c{0, 1.0, 0};
    const double near = std::max(dot_angle(sat, a, b), dot_angle(sat, b, c));
    const double far = dot_angle(sat, a, c);
    REQUIRE(near < far);
    const SatelliteGeometry g3{sat, near + far};
    auto p3 = build_proximity_graph(users_at({a, b, c}), g3);
    CHECK(p3.adjacent(0, 1));
    CHECK(p3.adjacent(1, 2));
    CHECK_FALSE(p3.adjacent(0, 2));
}

TEST_CASE("shrinking alpha never adds edges") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lat(25, 28), lon(-87, -84);
    UserSet us;
    for (int k = 0; k < 30; ++k) us.users.push_back({std::to_string(k), {lat(rng), lon(rng), 0}});
    const GeoPoint sat{26.8, -85.4, 1110};
    ProximityGraph prev = build_proximity_graph(us, {sat, deg_to_rad(20)});
    for (double a : {10.0, 5.0, 2.5, 1.0}) {
        auto g = build_proximity_graph(us, {sat, deg_to_rad(a)});
        for (const auto& [i, j] : g.edges()) CHECK(prev.adjacent(i, j));
        for (Vertex i = 0; i < g.num_vertices(); ++i) {
            CHECK_FALSE(g.adjacent(i, i));
            for (Vertex j = 0; j < g.num_vertices(); ++j) CHECK(g.adjacent(i, j) == g.adjacent(j, i));
        }
        prev = g;
    }
}

TEST_CASE("user set and geometry validation") {
    UserSet dup = users_at({{0, 0, 0}, {1, 1, 0}});
    dup.users[1].id = dup.users[0].id;
    CHECK_THROWS_AS(dup.validate(), ValidationError);
    UserSet high = users_at({{0, 0, 5}});
    CHECK_THROWS_AS(high.validate(), ValidationError);
    CHECK_THROWS_AS(build_proximity_graph(UserSet{}, {{0, 0, 1110}, 0.1}), ValidationError);
    CHECK_THROWS_AS(SatelliteGeometry({{0, 0, 0}, 0.1}).validate(), ValidationError);
    CHECK_THROWS_AS(SatelliteGeometry({{0, 0, 1110}, 0.0}).validate(), ValidationError);
    CHECK_THROWS_AS(SatelliteGeometry({{0, 0, 1110}, kPi}).validate(), ValidationError);
}
