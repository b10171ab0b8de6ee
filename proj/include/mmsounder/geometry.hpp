// SPDX-License-Identifier: Apache-2.0
//
// mmsounder: directional mmWave channel sounder simulator
// Copyright (C) 2026 The mmsounder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MMSOUNDER_GEOMETRY_HPP
#define MMSOUNDER_GEOMETRY_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmsounder
{

inline constexpr double kSpeedOfLight = 299792458.0; // m/s
inline constexpr double kPi = std::numbers::pi;

// Errors raised for invalid user input (scene, scenario, sounder settings).
// The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Rejected scene geometry (zero-length segments, non-planar walls, ...).
class SceneError : public ConfigError
{
public:
    using ConfigError::ConfigError;
};

// Unreadable input or unwritable output. The CLI maps these to exit code 3.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec3 &, const Vec3 &) = default;
};

// Positions and directions share the same representation; meters for positions.
using Point3 = Vec3;

inline Vec3 operator+(const Vec3 &a, const Vec3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(const Vec3 &a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, const Vec3 &a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(const Vec3 &a, double s) { return s * a; }

inline double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3 &a, const Vec3 &b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }

inline bool is_finite(const Vec3 &a)
{
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

inline Vec3 normalized(const Vec3 &a)
{
    const double n = norm(a);
    if (!(n > 0.0))
        throw SceneError("cannot normalize a zero-length vector");
    return (1.0 / n) * a;
}

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Wraps an angle in degrees to [-180, 180).
inline double wrap_deg(double deg)
{
    double w = std::fmod(deg + 180.0, 360.0);
    if (w < 0.0)
        w += 360.0;
    w -= 180.0;
    // fmod rounding can land exactly on +180
    return w >= 180.0 ? w - 360.0 : w;
}

// Global-frame azimuth (from +x towards +y) and elevation (from the xy-plane towards +z).
inline double azimuth_deg(const Vec3 &dir) { return wrap_deg(rad2deg(std::atan2(dir.y, dir.x))); }

inline double elevation_deg(const Vec3 &dir)
{
    const double n = norm(dir);
    double s = dir.z / n;
    s = s > 1.0 ? 1.0 : (s < -1.0 ? -1.0 : s);
    return rad2deg(std::asin(s));
}

// Unit vector pointing towards (az, el) in degrees.
inline Vec3 direction_from_angles(double az_deg, double el_deg)
{
    const double az = deg2rad(az_deg), el = deg2rad(el_deg);
    return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

// Angle between two non-zero vectors in degrees.
inline double angle_between_deg(const Vec3 &a, const Vec3 &b)
{
    // atan2 form stays accurate near 0 and 180 degrees
    return rad2deg(std::atan2(norm(cross(a, b)), dot(a, b)));
}

} // namespace mmsounder

#endif
