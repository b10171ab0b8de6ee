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

#ifndef MMSOUNDER_SCENE_HPP
#define MMSOUNDER_SCENE_HPP

#include "mmsounder/geometry.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace mmsounder
{

enum class PathTag
{
    Los,
    WallReflection,
    PassiveReflector,
    Repeater,
    Unclassified // recovered components carry no propagation mechanism
};

std::string_view to_string(PathTag tag);
PathTag path_tag_from_string(std::string_view name);

// One multipath component. Angles are global-frame degrees, az in [-180, 180).
struct Mpc
{
    double path_gain_db = 0.0; // excludes antenna gains
    double delay_s = 0.0;
    double aod_az_deg = 0.0;
    double aod_el_deg = 0.0;
    double aoa_az_deg = 0.0;
    double aoa_el_deg = 0.0;
    double phase_rad = 0.0; // [0, 2*pi)
    PathTag tag = PathTag::Los;
};

// Sparse power angular-delay profile, sorted by ascending delay.
struct Padp
{
    std::vector<Mpc> mpcs;
};

// Planar quad wall. Corners are given in perimeter order.
struct Surface
{
    std::array<Point3, 4> corners{};
    double reflection_loss_db = 10.0;
};

enum class ReflectorKind
{
    Specular,
    Anomalous
};

struct ReflectorSpec
{
    Point3 center;
    Vec3 normal{0.0, 1.0, 0.0};
    double width_m = 0.3;
    double height_m = 0.3;
    ReflectorKind kind = ReflectorKind::Specular;
    std::optional<double> design_incident_deg; // Anomalous only
    std::optional<double> design_reflect_deg;  // Anomalous only
    std::optional<double> peak_efficiency_db; // unset: 0 dB specular, -1 dB anomalous
    double angular_width_deg = 10.0;
};

// Amplify-and-forward node. TX must lie in front of rx_boresight and RX in front of tx_boresight.
struct RepeaterSpec
{
    Point3 position;
    Vec3 rx_boresight{1.0, 0.0, 0.0};
    Vec3 tx_boresight{1.0, 0.0, 0.0};
    double gain_db = 0.0;
    double internal_delay_s = 0.0;
    bool enabled = true;
};

struct Scene
{
    Point3 tx_pos;
    Point3 rx_pos;
    std::vector<Surface> surfaces;
    std::optional<ReflectorSpec> reflector;
    std::optional<RepeaterSpec> repeater;
    double carrier_hz = 28e9;
};

enum class PhaseMode
{
    Deterministic, // phase = (-2*pi*fc*delay) mod 2*pi
    Random         // uniform per path, drawn from phase_seed in enumeration order
};

struct PathOptions
{
    PhaseMode phase_mode = PhaseMode::Deterministic;
    std::uint64_t phase_seed = 0;
};

// Friis free-space loss 20*log10(4*pi*d*fc/c) in dB.
double free_space_path_loss_db(double distance_m, double carrier_hz);

double wavelength_m(double carrier_hz);

// Throws SceneError for invalid geometry or parameters.
void validate(const Scene &scene);
void validate(const Surface &surface);
void validate(const ReflectorSpec &spec);
void validate(const RepeaterSpec &spec);

// True if the open segment a-b crosses any surface except `skip` (index into surfaces).
bool segment_blocked(const Point3 &a, const Point3 &b, const std::vector<Surface> &surfaces,
                     std::optional<std::size_t> skip = std::nullopt);

// Deterministic ground-truth paths: LOS, one image-method bounce per surface, the reflector
// path and the repeater path, each only when geometrically valid and unblocked.
//
// Passive bounce paths (walls and reflector) follow image theory: the free-space loss is taken
// over the unfolded length d1 + d2. The repeater path re-radiates and therefore pays the
// free-space loss of both segments separately plus the repeater gain.
Padp enumerate_paths(const Scene &scene, const PathOptions &options = {});

// Peak response in dB: peak_efficiency_db when set, else the default for the reflector kind.
double peak_efficiency_db(const ReflectorSpec &spec);

// Bistatic response of a reflector in dB (includes the peak efficiency).
//
// incident_dir points from the reflector towards the source, observe_dir from the reflector
// towards the observer; both unit length. Returns -infinity if either lies behind the plate.
double reflector_response(const ReflectorSpec &spec, const Vec3 &incident_dir, const Vec3 &observe_dir,
                          double carrier_hz = 28e9);

// In-plane incidence/reflection angles used by reflector_response, in degrees.
// Incidence is measured on the source side of the normal, reflection on the opposite side,
// so a mirror reflection has reflection == incidence.
struct ReflectorAngles
{
    double incidence_deg = 0.0;
    double reflection_deg = 0.0;
    double incidence_tilt_deg = 0.0;  // out-of-plane component of the source direction
    double reflection_tilt_deg = 0.0; // out-of-plane component of the mirrored observer direction
};
ReflectorAngles reflector_angles(const ReflectorSpec &spec, const Vec3 &incident_dir, const Vec3 &observe_dir);

// Points on a horizontal circle around `center`; point i sits at global azimuth
// start_angle_deg + i * step_deg.
std::vector<Point3> arc_positions(const Point3 &center, double radius_m, double start_angle_deg, double step_deg,
                                  int count);

struct Resolution
{
    double delay_s = 0.0;
    double angle_deg = 0.0;
};

// Power-sums MPC pairs that share a delay bin and lie within angle_deg in all four angles.
// The merged component keeps the delay, angles and phase of the stronger one.
Padp merge_unresolvable(const Padp &padp, const Resolution &resolution);

} // namespace mmsounder

#endif
