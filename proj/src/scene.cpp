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

#include "mmsounder/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace mmsounder
{

namespace
{
constexpr double kMinSegment = 1e-9; // m
constexpr double kPlaneEps = 1e-9;

Vec3 surface_normal(const Surface &s)
{
    return normalized(cross(s.corners[1] - s.corners[0], s.corners[3] - s.corners[0]));
}

// Corners are coplanar and convex (validated), so the edge-side test is sufficient.
bool inside_quad(const Surface &s, const Vec3 &n, const Point3 &p)
{
    for (std::size_t i = 0; i < 4; ++i)
    {
        const Point3 &a = s.corners[i];
        const Point3 &b = s.corners[(i + 1) % 4];
        if (dot(cross(b - a, p - a), n) < -1e-12)
            return false;
    }
    return true;
}

double wrap_phase(double phase)
{
    constexpr double two_pi = 2.0 * kPi;
    double p = std::fmod(phase, two_pi);
    if (p < 0.0)
        p += two_pi;
    return p >= two_pi ? 0.0 : p;
}

double checked_length(const Point3 &a, const Point3 &b, const char *what)
{
    const double d = norm(b - a);
    if (!(d > kMinSegment))
        throw SceneError(std::string("degenerate geometry: zero-length ") + what + " segment");
    return d;
}

Mpc make_mpc(double gain_db, double length_m, double extra_delay_s, const Point3 &tx, const Point3 &first_hop,
             const Point3 &rx, const Point3 &last_hop, PathTag tag)
{
    Mpc m;
    m.path_gain_db = gain_db;
    m.delay_s = length_m / kSpeedOfLight + extra_delay_s;
    const Vec3 dep = first_hop - tx;
    const Vec3 arr = last_hop - rx;
    m.aod_az_deg = azimuth_deg(dep);
    m.aod_el_deg = elevation_deg(dep);
    m.aoa_az_deg = azimuth_deg(arr);
    m.aoa_el_deg = elevation_deg(arr);
    m.tag = tag;
    return m;
}

// Horizontal in-plane axis of a reflector; falls back to +x for a floor/ceiling mounted plate.
void reflector_axes(const Vec3 &n, Vec3 &u, Vec3 &v)
{
    const Vec3 up{0.0, 0.0, 1.0};
    const Vec3 c = cross(up, n);
    u = norm(c) > 1e-12 ? normalized(c) : Vec3{1.0, 0.0, 0.0};
    v = cross(n, u);
}
} // namespace

std::string_view to_string(PathTag tag)
{
    switch (tag)
    {
    case PathTag::Los:
        return "LOS";
    case PathTag::WallReflection:
        return "WallReflection";
    case PathTag::PassiveReflector:
        return "PassiveReflector";
    case PathTag::Repeater:
        return "Repeater";
    case PathTag::Unclassified:
        return "Unclassified";
    }
    return "LOS";
}

PathTag path_tag_from_string(std::string_view name)
{
    for (auto t : {PathTag::Los, PathTag::WallReflection, PathTag::PassiveReflector, PathTag::Repeater,
                   PathTag::Unclassified})
        if (to_string(t) == name)
            return t;
    throw ConfigError("unknown path tag: " + std::string(name));
}

double wavelength_m(double carrier_hz) { return kSpeedOfLight / carrier_hz; }

double free_space_path_loss_db(double distance_m, double carrier_hz)
{
    return 20.0 * std::log10(4.0 * kPi * distance_m * carrier_hz / kSpeedOfLight);
}

void validate(const Surface &s)
{
    for (const auto &c : s.corners)
        if (!is_finite(c))
            throw SceneError("surface corner has non-finite coordinates");
    if (!(s.reflection_loss_db >= 0.0) || !std::isfinite(s.reflection_loss_db))
        throw SceneError("surface reflection_loss_db must be finite and >= 0");

    const Vec3 c = cross(s.corners[1] - s.corners[0], s.corners[3] - s.corners[0]);
    if (!(norm(c) > 1e-12))
        throw SceneError("degenerate surface: corners are collinear");
    const Vec3 n = normalized(c);
    double scale = 0.0;
    for (const auto &p : s.corners)
        scale = std::max(scale, norm(p - s.corners[0]));
    if (std::abs(dot(s.corners[2] - s.corners[0], n)) > 1e-6 * std::max(scale, 1.0))
        throw SceneError("surface corners are not coplanar");
    for (std::size_t i = 0; i < 4; ++i)
    {
        const Vec3 e0 = s.corners[(i + 1) % 4] - s.corners[i];
        const Vec3 e1 = s.corners[(i + 2) % 4] - s.corners[(i + 1) % 4];
        if (dot(cross(e0, e1), n) <= 0.0)
            throw SceneError("surface corners must form a convex quad in perimeter order");
    }
}

void validate(const ReflectorSpec &r)
{
    if (!is_finite(r.center) || !is_finite(r.normal))
        throw SceneError("reflector center/normal must be finite");
    if (std::abs(norm(r.normal) - 1.0) > 1e-6)
        throw SceneError("reflector normal must be a unit vector");
    if (!(r.width_m > 0.0) || !(r.height_m > 0.0))
        throw SceneError("reflector width and height must be positive");
    if (!(r.angular_width_deg > 0.0))
        throw SceneError("reflector angular_width_deg must be positive");
    if (r.peak_efficiency_db && !(*r.peak_efficiency_db <= 0.0))
        throw SceneError("reflector peak_efficiency_db must be <= 0");
    if (r.kind == ReflectorKind::Anomalous && (!r.design_incident_deg || !r.design_reflect_deg))
        throw SceneError("anomalous reflector requires design_incident_deg and design_reflect_deg");
}

void validate(const RepeaterSpec &r)
{
    if (!is_finite(r.position))
        throw SceneError("repeater position must be finite");
    if (!(norm(r.rx_boresight) > 0.0) || !(norm(r.tx_boresight) > 0.0))
        throw SceneError("repeater boresights must be non-zero");
    if (!(r.internal_delay_s >= 0.0))
        throw SceneError("repeater internal_delay_s must be >= 0");
    if (r.enabled && !std::isfinite(r.gain_db))
        throw SceneError("enabled repeater requires a finite gain_db");
}

void validate(const Scene &scene)
{
    if (!is_finite(scene.tx_pos) || !is_finite(scene.rx_pos))
        throw SceneError("tx/rx positions must be finite");
    checked_length(scene.tx_pos, scene.rx_pos, "TX-RX");
    if (!(scene.carrier_hz > 0.0))
        throw SceneError("carrier_hz must be positive");
    for (const auto &s : scene.surfaces)
        validate(s);
    if (scene.reflector)
        validate(*scene.reflector);
    if (scene.repeater)
        validate(*scene.repeater);
}

bool segment_blocked(const Point3 &a, const Point3 &b, const std::vector<Surface> &surfaces,
                     std::optional<std::size_t> skip)
{
    for (std::size_t i = 0; i < surfaces.size(); ++i)
    {
        if (skip && *skip == i)
            continue;
        const Surface &s = surfaces[i];
        const Vec3 n = surface_normal(s);
        const double da = dot(a - s.corners[0], n);
        const double db = dot(b - s.corners[0], n);
        // Endpoints touching the plane (e.g. a plate mounted on a wall) do not count as crossings.
        if (std::abs(da) < kPlaneEps || std::abs(db) < kPlaneEps || (da > 0.0) == (db > 0.0))
            continue;
        const double t = da / (da - db);
        if (inside_quad(s, n, a + t * (b - a)))
            return true;
    }
    return false;
}

ReflectorAngles reflector_angles(const ReflectorSpec &spec, const Vec3 &incident_dir, const Vec3 &observe_dir)
{
    Vec3 u, v;
    const Vec3 &n = spec.normal;
    reflector_axes(n, u, v);
    ReflectorAngles a;
    a.incidence_deg = rad2deg(std::atan2(dot(incident_dir, u), dot(incident_dir, n)));
    a.reflection_deg = rad2deg(std::atan2(-dot(observe_dir, u), dot(observe_dir, n)));
    a.incidence_tilt_deg = rad2deg(std::asin(std::clamp(dot(incident_dir, v), -1.0, 1.0)));
    a.reflection_tilt_deg = rad2deg(std::asin(std::clamp(-dot(observe_dir, v), -1.0, 1.0)));
    return a;
}

double peak_efficiency_db(const ReflectorSpec &spec)
{
    if (spec.peak_efficiency_db)
        return *spec.peak_efficiency_db;
    return spec.kind == ReflectorKind::Anomalous ? -1.0 : 0.0;
}

double reflector_response(const ReflectorSpec &spec, const Vec3 &incident_dir, const Vec3 &observe_dir,
                          double carrier_hz)
{
    constexpr double floor_db = 40.0;
    const Vec3 &n = spec.normal;
    if (dot(incident_dir, n) <= 0.0 || dot(observe_dir, n) <= 0.0)
        return -std::numeric_limits<double>::infinity();

    if (spec.kind == ReflectorKind::Anomalous)
    {
        const ReflectorAngles a = reflector_angles(spec, incident_dir, observe_dir);
        const double w = spec.angular_width_deg;
        const double di = (a.incidence_deg - *spec.design_incident_deg) / w;
        const double dr = (a.reflection_deg - *spec.design_reflect_deg) / w;
        const double dt = (a.reflection_tilt_deg - a.incidence_tilt_deg) / w;
        return peak_efficiency_db(spec) - std::min(12.0 * (di * di + dr * dr + dt * dt), floor_db);
    }

    const Vec3 mirror = 2.0 * dot(incident_dir, n) * n - incident_dir;
    const double dev = angle_between_deg(observe_dir, mirror);

    // Aperture in the plane of the deviation sets the physical lobe width.
    Vec3 u, v;
    reflector_axes(n, u, v);
    const Vec3 d = observe_dir - mirror;
    const double aperture = std::abs(dot(d, u)) >= std::abs(dot(d, v)) ? spec.width_m : spec.height_m;
    const double aperture_lobe = rad2deg(0.886 * wavelength_m(carrier_hz) / aperture);
    const double w = std::max(spec.angular_width_deg, aperture_lobe);
    return peak_efficiency_db(spec) - std::min(12.0 * (dev / w) * (dev / w), floor_db);
}

Padp enumerate_paths(const Scene &scene, const PathOptions &options)
{
    validate(scene);
    const double fc = scene.carrier_hz;
    const Point3 &tx = scene.tx_pos;
    const Point3 &rx = scene.rx_pos;
    std::vector<Mpc> out;

    // LOS
    {
        const double d = checked_length(tx, rx, "LOS");
        if (!segment_blocked(tx, rx, scene.surfaces))
            out.push_back(make_mpc(-free_space_path_loss_db(d, fc), d, 0.0, tx, rx, rx, tx, PathTag::Los));
    }

    // Single-bounce wall reflections via the image of the transmitter.
    for (std::size_t i = 0; i < scene.surfaces.size(); ++i)
    {
        const Surface &s = scene.surfaces[i];
        const Vec3 n = surface_normal(s);
        const double dtx = dot(tx - s.corners[0], n);
        const double drx = dot(rx - s.corners[0], n);
        if (std::abs(dtx) < kPlaneEps || std::abs(drx) < kPlaneEps || (dtx > 0.0) != (drx > 0.0))
            continue;
        const Point3 image = tx - 2.0 * dtx * n;
        const double dimg = -dtx;
        const double t = dimg / (dimg - drx);
        const Point3 bounce = image + t * (rx - image);
        if (!inside_quad(s, n, bounce))
            continue;
        const double d1 = checked_length(tx, bounce, "wall incidence");
        const double d2 = checked_length(bounce, rx, "wall reflection");
        if (segment_blocked(tx, bounce, scene.surfaces, i) || segment_blocked(bounce, rx, scene.surfaces, i))
            continue;
        const double gain = -free_space_path_loss_db(d1 + d2, fc) - s.reflection_loss_db;
        out.push_back(make_mpc(gain, d1 + d2, 0.0, tx, bounce, rx, bounce, PathTag::WallReflection));
    }

    if (scene.reflector)
    {
        const ReflectorSpec &r = *scene.reflector;
        const double d1 = checked_length(tx, r.center, "TX-reflector");
        const double d2 = checked_length(r.center, rx, "reflector-RX");
        const double resp = reflector_response(r, (1.0 / d1) * (tx - r.center), (1.0 / d2) * (rx - r.center), fc);
        if (std::isfinite(resp) && !segment_blocked(tx, r.center, scene.surfaces) &&
            !segment_blocked(r.center, rx, scene.surfaces))
        {
            const double gain = -free_space_path_loss_db(d1 + d2, fc) + resp;
            out.push_back(make_mpc(gain, d1 + d2, 0.0, tx, r.center, rx, r.center, PathTag::PassiveReflector));
        }
    }

    if (scene.repeater && scene.repeater->enabled)
    {
        const RepeaterSpec &r = *scene.repeater;
        const double d1 = checked_length(tx, r.position, "TX-repeater");
        const double d2 = checked_length(r.position, rx, "repeater-RX");
        const bool facing = dot(tx - r.position, r.rx_boresight) > 0.0 && dot(rx - r.position, r.tx_boresight) > 0.0;
        if (facing && !segment_blocked(tx, r.position, scene.surfaces) &&
            !segment_blocked(r.position, rx, scene.surfaces))
        {
            const double gain = -free_space_path_loss_db(d1, fc) - free_space_path_loss_db(d2, fc) + r.gain_db;
            out.push_back(
                make_mpc(gain, d1 + d2, r.internal_delay_s, tx, r.position, rx, r.position, PathTag::Repeater));
        }
    }

    if (options.phase_mode == PhaseMode::Random)
    {
        std::mt19937_64 rng(options.phase_seed);
        std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
        for (auto &m : out)
            m.phase_rad = wrap_phase(uni(rng));
    }
    else
    {
        for (auto &m : out)
            m.phase_rad = wrap_phase(-2.0 * kPi * fc * m.delay_s);
    }

    std::stable_sort(out.begin(), out.end(), [](const Mpc &a, const Mpc &b) { return a.delay_s < b.delay_s; });
    return Padp{std::move(out)};
}

std::vector<Point3> arc_positions(const Point3 &center, double radius_m, double start_angle_deg, double step_deg,
                                  int count)
{
    if (!(radius_m > 0.0))
        throw ConfigError("arc radius must be positive");
    if (count < 1)
        throw ConfigError("arc count must be >= 1");
    std::vector<Point3> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
    {
        const double a = deg2rad(start_angle_deg + i * step_deg);
        pts.push_back(center + Vec3{radius_m * std::cos(a), radius_m * std::sin(a), 0.0});
    }
    return pts;
}

Padp merge_unresolvable(const Padp &padp, const Resolution &res)
{
    std::vector<Mpc> in = padp.mpcs;
    // Strongest first so every merge keeps the dominant component's parameters.
    std::stable_sort(in.begin(), in.end(), [](const Mpc &a, const Mpc &b) { return a.path_gain_db > b.path_gain_db; });
    std::vector<Mpc> kept;
    for (const Mpc &m : in)
    {
        bool merged = false;
        for (Mpc &k : kept)
        {
            const bool same_bin = std::abs(k.delay_s - m.delay_s) < res.delay_s;
            const bool close = std::abs(wrap_deg(k.aod_az_deg - m.aod_az_deg)) <= res.angle_deg &&
                               std::abs(k.aod_el_deg - m.aod_el_deg) <= res.angle_deg &&
                               std::abs(wrap_deg(k.aoa_az_deg - m.aoa_az_deg)) <= res.angle_deg &&
                               std::abs(k.aoa_el_deg - m.aoa_el_deg) <= res.angle_deg;
            if (same_bin && close)
            {
                k.path_gain_db = 10.0 * std::log10(std::pow(10.0, k.path_gain_db / 10.0) +
                                                   std::pow(10.0, m.path_gain_db / 10.0));
                merged = true;
                break;
            }
        }
        if (!merged)
            kept.push_back(m);
    }
    std::stable_sort(kept.begin(), kept.end(), [](const Mpc &a, const Mpc &b) { return a.delay_s < b.delay_s; });
    return Padp{std::move(kept)};
}

} // namespace mmsounder
