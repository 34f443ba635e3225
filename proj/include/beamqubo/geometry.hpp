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

#pragma once

#include <array>
#include <string>
#include <vector>

#include "beamqubo/graph.hpp"

namespace beamqubo {

/// Spherical Earth radius in kilometres.
inline constexpr double kEarthRadiusKm = 6371.0;

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

using Vec3 = std::array<double, 3>;

struct GeoPoint {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double altitude_km = 0.0;

    /// Throws ValidationError when a field is outside its range.
    void validate() const;
};

struct SatelliteGeometry {
    GeoPoint position;
    /// Full beam cone angle in radians; users pair up when their separation
    /// seen from the satellite is at most half of it.
    double cone_angle_rad = 0.0;

    void validate() const;
};

struct User {
    std::string id;
    GeoPoint position;
};

/// Ground users. Ids are unique and every altitude is zero.
struct UserSet {
    std::vector<User> users;

    std::size_t size() const noexcept { return users.size(); }
    bool empty() const noexcept { return users.empty(); }
    void validate() const;
};

/// Earth-centred Cartesian coordinates in km on a sphere of kEarthRadiusKm.
Vec3 to_ecef(const GeoPoint& p);

/// Angle in [0, pi] between the look vectors from `sat` to `u` and to `v`.
///
/// Computed as atan2(|a x b|, a . b), which is exactly symmetric in u and v
/// and well conditioned for tiny angles. Throws DegenerateGeometryError when
/// either look vector has zero length.
double angular_separation(const GeoPoint& sat, const GeoPoint& u, const GeoPoint& v);

/// Edge (i, j) iff angular_separation(sat, u_i, u_j) <= cone_angle / 2.
ProximityGraph build_proximity_graph(const UserSet& users, const SatelliteGeometry& geom);

}  // namespace beamqubo
