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

#include "beamqubo/geometry.hpp"

#include <cmath>
#include <set>

#include "beamqubo/errors.hpp"

namespace beamqubo {

void GeoPoint::validate() const {
    if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0)) {
        throw ValidationError("latitude " + std::to_string(latitude_deg) +
                              " outside [-90, 90] degrees");
    }
    if (!(longitude_deg >= -180.0 && longitude_deg <= 180.0)) {
        throw ValidationError("longitude " + std::to_string(longitude_deg) +
                              " outside [-180, 180] degrees");
    }
    if (!(altitude_km >= 0.0) || !std::isfinite(altitude_km)) {
        throw ValidationError("altitude " + std::to_string(altitude_km) + " km is negative");
    }
}

void SatelliteGeometry::validate() const {
    position.validate();
    if (!(position.altitude_km > 0.0)) {
        throw ValidationError("satellite altitude must be positive");
    }
    if (!(cone_angle_rad > 0.0 && cone_angle_rad < kPi)) {
        throw ValidationError("cone angle must lie in (0, pi) radians");
    }
}

void UserSet::validate() const {
    std::set<std::string> seen;
    for (const auto& u : users) {
        u.position.validate();
        if (u.position.altitude_km != 0.0) {
            throw ValidationError("user '" + u.id + "' is not on the surface");
        }
        if (!seen.insert(u.id).second) throw ValidationError("duplicate user id '" + u.id + "'");
    }
}

Vec3 to_ecef(const GeoPoint& p) {
    p.validate();
    const double lat = deg_to_rad(p.latitude_deg);
    const double lon = deg_to_rad(p.longitude_deg);
    const double r = kEarthRadiusKm + p.altitude_km;
    return {r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon),
            r * std::sin(lat)};
}

namespace {

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

double separation(const Vec3& a, const Vec3& b) {
    const Vec3 c{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    const double cross = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
    const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    return std::atan2(cross, dot);
}

bool is_zero(const Vec3& a) { return a[0] == 0.0 && a[1] == 0.0 && a[2] == 0.0; }

}  // namespace

double angular_separation(const GeoPoint& sat, const GeoPoint& u, const GeoPoint& v) {
    const Vec3 s = to_ecef(sat);
    const Vec3 du = sub(to_ecef(u), s);
    const Vec3 dv = sub(to_ecef(v), s);
    if (is_zero(du) || is_zero(dv)) {
        throw DegenerateGeometryError("user coincides with the satellite position");
    }
    return separation(du, dv);
}

ProximityGraph build_proximity_graph(const UserSet& users, const SatelliteGeometry& geom) {
    geom.validate();
    users.validate();
    if (users.empty()) throw ValidationError("user set is empty");

    const Vec3 s = to_ecef(geom.position);
    std::vector<Vec3> look;
    look.reserve(users.size());
    for (const auto& u : users.users) {
        look.push_back(sub(to_ecef(u.position), s));
        if (is_zero(look.back())) {
            throw DegenerateGeometryError("user '" + u.id + "' coincides with the satellite");
        }
    }

    const double threshold = geom.cone_angle_rad / 2.0;
    ProximityGraph g(users.size());
    for (std::size_t i = 0; i < look.size(); ++i) {
        for (std::size_t j = i + 1; j < look.size(); ++j) {
            if (separation(look[i], look[j]) <= threshold) g.add_edge(i, j);
        }
    }
    return g;
}

}  // namespace beamqubo
