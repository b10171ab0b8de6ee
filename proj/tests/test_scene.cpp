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


#include "support.hpp"

#include "mmsounder/serialize.hpp"

#include <catch_amalgamated.hpp>

using namespace mmsounder;
using Catch::Approx;

namespace
{
// Vertical wall in the plane y = y0, spanning x0..x1 and z 0..3.
Surface wall_y(double y0, double x0, double x1, double loss = 10.0)
{
    Surface s;
    s.corners = {Point3{x0, y0, 0.0}, Point3{x1, y0, 0.0}, Point3{x1, y0, 3.0}, Point3{x0, y0, 3.0}};
    s.reflection_loss_db = loss;
    return s;
}

Surface wall_x(double x0, double y0, double y1, double loss = 10.0)
{
    Surface s;
    s.corners = {Point3{x0, y0, 0.0}, Point3{x0, y1, 0.0}, Point3{x0, y1, 3.0}, Point3{x0, y0, 3.0}};
    s.reflection_loss_db = loss;
    return s;
}

double fspl_oracle(double d, double f) { return 20.0 * std::log10(4.0 * 3.141592653589793 * d * f / 299792458.0); }

const Mpc *find_tag(const Padp &p, PathTag tag)
{
    for (const auto &m : p.mpcs)
        if (m.tag == tag)
            return &m;
    return nullptr;
}

ReflectorSpec echo_at_origin()
{
    ReflectorSpec r;
    r.center = {0.0, 0.0, 1.5};
    r.normal = {0.0, 1.0, 0.0};
    r.kind = ReflectorKind::Anomalous;
    r.design_incident_deg = 52.0;
    r.design_reflect_deg = 30.0;
    return r;
}

// Incidence/reflection angles in the plane of the reflector axes for a normal along +y.
Vec3 incident_at(double deg) { return {-std::sin(deg2rad(deg)), std::cos(deg2rad(deg)), 0.0}; }
Vec3 observed_at(double deg) { return {std::sin(deg2rad(deg)), std::cos(deg2rad(deg)), 0.0}; }
} // namespace

TEST_CASE("free-space path loss")
{
    for (double d : {0.5, 1.0, 5.6, 8.36, 100.0})
        CHECK(free_space_path_loss_db(d, 28e9) == Approx(fspl_oracle(d, 28e9)).margin(1e-9));
    CHECK(free_space_path_loss_db(1.0, 28e9) == Approx(61.39).margin(0.01));
    CHECK(wavelength_m(28e9) == Approx(0.010707).margin(1e-6));
}

TEST_CASE("LOS path in free space")
{
    Scene s;
    s.tx_pos = {0, 0, 1.5};
    s.rx_pos = {5.6, 0, 1.5};
    const Padp p = enumerate_paths(s);
    REQUIRE(p.mpcs.size() == 1);
    const Mpc &m = p.mpcs[0];
    CHECK(m.tag == PathTag::Los);
    CHECK(m.delay_s * 1e9 == Approx(18.68).margin(0.01));
    CHECK(m.path_gain_db == Approx(-fspl_oracle(5.6, 28e9)));
    CHECK(m.path_gain_db == Approx(-76.3).margin(0.1));
    CHECK(m.aod_az_deg == Approx(0.0).margin(1e-9));
    CHECK(std::abs(m.aoa_az_deg) == Approx(180.0));
    CHECK(m.phase_rad >= 0.0);
    CHECK(m.phase_rad < 2.0 * kPi);
}

TEST_CASE("single wall bounce follows the image law")
{
    Scene s;
    s.tx_pos = {0, 1, 1.5};
    s.rx_pos = {4, 1, 1.5};
    s.surfaces.push_back(wall_y(0.0, -10.0, 10.0, 10.0));
    const Padp p = enumerate_paths(s);
    REQUIRE(p.mpcs.size() == 2);
    const Mpc *w = find_tag(p, PathTag::WallReflection);
    REQUIRE(w);
    const double len = 2.0 * std::sqrt(5.0);
    CHECK(w->delay_s * kSpeedOfLight == Approx(len));
    CHECK(w->path_gain_db == Approx(-fspl_oracle(len, 28e9) - 10.0));
    CHECK(w->aod_az_deg == Approx(-rad2deg(std::atan2(1.0, 2.0))));
    CHECK(w->aoa_az_deg == Approx(-180.0 + rad2deg(std::atan2(1.0, 2.0))));
    // LOS comes first in delay order
    CHECK(p.mpcs[0].tag == PathTag::Los);
}

TEST_CASE("image law holds for random geometries")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.2, 6.0);
    for (int i = 0; i < 200; ++i)
    {
        Scene s;
        s.tx_pos = {u(rng) - 3.0, u(rng), 1.0 + 0.2 * u(rng)};
        s.rx_pos = {u(rng) - 3.0, u(rng), 1.0 + 0.2 * u(rng)};
        if (norm(s.tx_pos - s.rx_pos) < 0.1)
            continue;
        s.surfaces.push_back(wall_y(0.0, -50.0, 50.0, 7.0));
        const Padp p = enumerate_paths(s);
        const Mpc *w = find_tag(p, PathTag::WallReflection);
        REQUIRE(w);
        const Point3 image{s.tx_pos.x, -s.tx_pos.y, s.tx_pos.z};
        const double len = norm(s.rx_pos - image);
        CHECK(w->delay_s * kSpeedOfLight == Approx(len).epsilon(1e-12));
        CHECK(w->path_gain_db == Approx(-fspl_oracle(len, 28e9) - 7.0));
        // Mirror symmetry: departure and arrival elevations are opposite-signed slopes of one line.
        const Vec3 to_rx = s.rx_pos - image;
        CHECK(w->aoa_el_deg == Approx(-elevation_deg(to_rx)).margin(1e-9));
        CHECK(w->path_gain_db < 0.0);
        CHECK(w->delay_s >= find_tag(p, PathTag::Los)->delay_s);
    }
}

TEST_CASE("a wall between TX and RX blocks LOS")
{
    Scene s;
    s.tx_pos = {0, 0, 1.5};
    s.rx_pos = {4, 0, 1.5};
    s.surfaces.push_back(wall_x(2.0, -1.0, 1.0));
    CHECK(segment_blocked(s.tx_pos, s.rx_pos, s.surfaces));
    CHECK(find_tag(enumerate_paths(s), PathTag::Los) == nullptr);
    s.surfaces[0] = wall_x(2.0, 1.0, 3.0);
    CHECK_FALSE(segment_blocked(s.tx_pos, s.rx_pos, s.surfaces));
    CHECK(find_tag(enumerate_paths(s), PathTag::Los) != nullptr);
}

TEST_CASE("repeater adds a two-segment path when enabled")
{
    Scene s;
    s.tx_pos = {0, 0, 1.5};
    s.rx_pos = {6, 3, 1.5};
    RepeaterSpec r;
    r.position = {6, 0, 1.5};
    r.rx_boresight = {-1, 0, 0};
    r.tx_boresight = {0, 1, 0};
    r.gain_db = 50.0;
    r.internal_delay_s = 2e-9;
    s.repeater = r;
    const Padp on = enumerate_paths(s);
    const Mpc *m = find_tag(on, PathTag::Repeater);
    REQUIRE(m);
    CHECK(m->path_gain_db == Approx(-fspl_oracle(6.0, 28e9) - fspl_oracle(3.0, 28e9) + 50.0));
    CHECK(m->delay_s == Approx(9.0 / kSpeedOfLight + 2e-9));
    CHECK(m->aod_az_deg == Approx(0.0).margin(1e-9));
    CHECK(m->aoa_az_deg == Approx(-90.0));

    s.repeater->enabled = false;
    CHECK(find_tag(enumerate_paths(s), PathTag::Repeater) == nullptr);

    // Facing away from the RX: nothing is re-radiated towards it.
    s.repeater->enabled = true;
    s.repeater->tx_boresight = {0, -1, 0};
    CHECK(find_tag(enumerate_paths(s), PathTag::Repeater) == nullptr);
}

TEST_CASE("reflector response examples")
{
    ReflectorSpec plate;
    plate.normal = {0, 1, 0};
    CHECK(reflector_response(plate, incident_at(40.0), observed_at(40.0)) == Approx(0.0).margin(1e-9));
    CHECK(reflector_response(plate, incident_at(40.0), observed_at(10.0)) < -20.0);

    const ReflectorSpec echo = echo_at_origin();
    CHECK(peak_efficiency_db(echo) == -1.0);
    CHECK(peak_efficiency_db(plate) == 0.0);
    CHECK(reflector_response(echo, incident_at(52.0), observed_at(30.0)) == Approx(-1.0));
    // one angular width off in reflection: 12 dB down
    CHECK(reflector_response(echo, incident_at(52.0), observed_at(40.0)) == Approx(-13.0));
    // floor 40 dB below peak
    CHECK(reflector_response(echo, incident_at(52.0), observed_at(-60.0)) == Approx(-41.0));
    // behind the plate
    CHECK(std::isinf(reflector_response(echo, incident_at(52.0), {0, -1, 0})));
    CHECK(std::isinf(reflector_response(plate, {0, -1, 0}, observed_at(0.0))));

    const ReflectorAngles a = reflector_angles(echo, incident_at(52.0), observed_at(30.0));
    CHECK(a.incidence_deg == Approx(52.0));
    CHECK(a.reflection_deg == Approx(30.0));
}

TEST_CASE("anomalous reflector power peaks at its design point along an arc")
{
    const ReflectorSpec echo = echo_at_origin();
    const Point3 tx = echo.center + 4.9 * incident_at(52.0);
    // Reflection angles 62, 54, ..., -2 deg; the design angle 30 is index 4.
    const auto pts = arc_positions(echo.center, 3.46, 28.0, 8.0, 9);
    REQUIRE(pts.size() == 9);
    std::size_t best = 0;
    double best_gain = -1e9;
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        Scene s;
        s.tx_pos = tx;
        s.rx_pos = pts[i];
        s.reflector = echo;
        const Mpc *m = find_tag(enumerate_paths(s), PathTag::PassiveReflector);
        REQUIRE(m);
        CHECK(m->delay_s * kSpeedOfLight == Approx(8.36));
        if (m->path_gain_db > best_gain)
        {
            best_gain = m->path_gain_db;
            best = i;
        }
    }
    CHECK(best == 4);
    CHECK(best_gain == Approx(-fspl_oracle(8.36, 28e9) - 1.0));
}

TEST_CASE("arc positions")
{
    const auto pts = arc_positions({1, 2, 1.5}, 3.46, 10.0, 8.0, 9);
    REQUIRE(pts.size() == 9);
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        CHECK(norm(pts[i] - Point3{1, 2, 1.5}) == Approx(3.46));
        CHECK(pts[i].z == 1.5);
        if (i > 0)
            CHECK(norm(pts[i] - pts[i - 1]) == Approx(2.0 * 3.46 * std::sin(deg2rad(4.0))));
    }
    CHECK(angle_between_deg(pts.front() - Point3{1, 2, 1.5}, pts.back() - Point3{1, 2, 1.5}) == Approx(64.0));
    CHECK(arc_positions({0, 0, 0}, 1.0, 0.0, 8.0, 1).size() == 1);
    CHECK_THROWS_AS(arc_positions({0, 0, 0}, 1.0, 0.0, 8.0, 0), ConfigError);
    CHECK_THROWS_AS(arc_positions({0, 0, 0}, 0.0, 0.0, 8.0, 3), ConfigError);
}

TEST_CASE("enumeration is deterministic and passive gains are negative")
{
    Scene s;
    s.tx_pos = {1, 1, 1.5};
    s.rx_pos = {5, 3, 1.2};
    s.surfaces = {wall_y(0.0, -10, 10), wall_y(6.0, -10, 10), wall_x(-2.0, -1, 7), wall_x(9.0, -1, 7)};
    const Padp a = enumerate_paths(s);
    const Padp b = enumerate_paths(s);
    REQUIRE(a.mpcs.size() == 5);
    for (std::size_t i = 0; i < a.mpcs.size(); ++i)
    {
        CHECK(a.mpcs[i].path_gain_db == b.mpcs[i].path_gain_db);
        CHECK(a.mpcs[i].delay_s == b.mpcs[i].delay_s);
        CHECK(a.mpcs[i].phase_rad == b.mpcs[i].phase_rad);
        CHECK(a.mpcs[i].path_gain_db < 0.0);
        if (i > 0)
            CHECK(a.mpcs[i].delay_s >= a.mpcs[i - 1].delay_s);
    }
    PathOptions opt;
    opt.phase_mode = PhaseMode::Random;
    opt.phase_seed = 11;
    const Padp r1 = enumerate_paths(s, opt), r2 = enumerate_paths(s, opt);
    for (std::size_t i = 0; i < r1.mpcs.size(); ++i)
        CHECK(r1.mpcs[i].phase_rad == r2.mpcs[i].phase_rad);
}

TEST_CASE("merge_unresolvable")
{
    Padp p;
    Mpc a;
    a.path_gain_db = -70.0;
    a.delay_s = 10e-9;
    Mpc b = a;
    b.path_gain_db = -70.0;
    b.delay_s = 10.2e-9;
    b.aoa_az_deg = 5.0;
    Mpc c = a;
    c.delay_s = 10.1e-9;
    c.aoa_az_deg = 120.0;
    p.mpcs = {a, b, c};
    const Padp m = merge_unresolvable(p, {0.651e-9, 10.0});
    REQUIRE(m.mpcs.size() == 2);
    double merged = -1e9;
    for (const auto &x : m.mpcs)
        merged = std::max(merged, x.path_gain_db);
    CHECK(merged == Approx(-70.0 + 10.0 * std::log10(2.0)));
}

TEST_CASE("scene validation")
{
    Scene s;
    s.tx_pos = {0, 0, 1};
    s.rx_pos = {0, 0, 1};
    CHECK_THROWS_AS(validate(s), SceneError);
    s.rx_pos = {1, 0, 1};
    CHECK_NOTHROW(validate(s));

    Surface bent = wall_y(0.0, 0, 1);
    bent.corners[2].y = 0.5;
    CHECK_THROWS_AS(validate(bent), SceneError);
    Surface line;
    line.corners = {Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{2, 0, 0}, Point3{3, 0, 0}};
    CHECK_THROWS_AS(validate(line), SceneError);

    ReflectorSpec r = echo_at_origin();
    r.normal = {0, 2, 0};
    CHECK_THROWS_AS(validate(r), SceneError);
    r = echo_at_origin();
    r.design_reflect_deg.reset();
    CHECK_THROWS_AS(validate(r), SceneError);
    r = echo_at_origin();
    r.peak_efficiency_db = 1.0;
    CHECK_THROWS_AS(validate(r), SceneError);

    RepeaterSpec rep;
    rep.internal_delay_s = -1.0;
    CHECK_THROWS_AS(validate(rep), SceneError);
    // SceneError is a configuration error
    CHECK_THROWS_AS(validate(rep), ConfigError);
}

TEST_CASE("indoor arc scenario reproduces the published distances")
{
    const ScenarioConfig cfg = load_scenario(mmtest::source_path("scenarios/indoor_arc.json"));
    REQUIRE(cfg.arc);
    const double refl = reflector_path_length_m(cfg.scene, cfg.arc->anomalous.center);
    CHECK(refl == Approx(8.36).margin(0.005));
    CHECK(norm(cfg.scene.tx_pos - cfg.scene.rx_pos) == Approx(5.6).margin(0.05));

    Scene s = cfg.scene;
    s.reflector = cfg.arc->anomalous;
    const Mpc *m = find_tag(enumerate_paths(s), PathTag::PassiveReflector);
    REQUIRE(m);
    const double bin = SounderConfig{}.bin_width_s();
    const double binned = std::round(m->delay_s / bin) * bin;
    CHECK(std::abs(binned - 27.88e-9) <= bin / 2.0);
}
