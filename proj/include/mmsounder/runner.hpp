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

#ifndef MMSOUNDER_RUNNER_HPP
#define MMSOUNDER_RUNNER_HPP

#include "mmsounder/analysis.hpp"
#include "mmsounder/antenna.hpp"
#include "mmsounder/scan.hpp"
#include "mmsounder/scene.hpp"
#include "mmsounder/sounder.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mmsounder
{

inline constexpr int kScenarioVersion = 1;

enum class ScenarioKind
{
    HallComparison,
    ReflectorArc,
    RepeaterHallway
};

std::string_view to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(std::string_view name);

// Horn grid and the phased-array gimbal/electronic grid measured in the same room.
struct HallSettings
{
    std::vector<double> horn_tx_az;
    std::vector<double> horn_rx_az;
    std::vector<double> elevations; // both sides, both antennas
    std::vector<double> tx_gimbal_az;
    std::vector<double> rx_gimbal_az;
    std::vector<double> electronic_az;
    AntennaPattern horn = horn_antenna();
    AntennaPattern array_tx = phased_array_tx();
    AntennaPattern array_rx = phased_array_rx();
    double horn_tx_power_dbm = 0.0;
    double array_tx_power_dbm = 0.0;
};

// RX walks an arc around the reflector; each point gets a fine alignment scan aimed at the reflector.
struct ArcSettings
{
    Point3 arc_center;
    double radius_m = 1.0;
    double start_az_deg = 0.0;
    double step_deg = 1.0;
    int count = 1;
    int first_label = 1;  // point i is labelled c<first_label + i>
    int design_label = 1; // the point the anomalous reflector is designed for
    double tx_span_deg = 5.0;
    double tx_step_deg = 1.0;
    double rx_span_deg = 15.0;
    double rx_step_deg = 1.0;
    int window_bins = 1;
    ReflectorSpec specular;
    ReflectorSpec anomalous;
    AntennaPattern tx_pattern = horn_antenna();
    AntennaPattern rx_pattern = horn_antenna();
};

struct RepeaterSettings
{
    std::vector<Point3> rx_positions;
    double az_start_deg = -180.0;
    double az_span_deg = 340.0;
    double az_step_deg = 20.0;
    double el_deg = 0.0;
    // When set, scene.repeater->gain_db is solved so that ON - OFF at calibration_index equals this.
    std::optional<double> calibration_target_db;
    int calibration_index = 0;
    AntennaPattern tx_pattern = horn_antenna();
    AntennaPattern rx_pattern = horn_antenna();
};

struct ScenarioConfig
{
    int version = kScenarioVersion;
    std::string name;
    ScenarioKind kind = ScenarioKind::HallComparison;
    Scene scene;
    SounderConfig sounder;
    ExtractionConfig extraction;
    TimingModel timing;
    std::uint64_t master_seed = 1;
    std::vector<std::string> outputs{"csv", "json"};
    std::optional<HallSettings> hall;
    std::optional<ArcSettings> arc;
    std::optional<RepeaterSettings> repeater;
};

// Throws ConfigError (or SceneError) for inconsistent configurations.
void validate(const ScenarioConfig &config);

struct ElevationCdf
{
    double tx_el_deg = 0.0;
    double rx_el_deg = 0.0;
    std::vector<CdfPoint> cdf;
};

struct HallSide
{
    std::string antenna;
    std::vector<HeatmapCell> heatmap; // elevation 0/0 slice
    std::vector<ElevationCdf> cdfs;   // every (tx_el, rx_el) pair, tx-major
    std::vector<Mpc> mpcs;
    std::size_t steps = 0;
    double measurement_time_s = 0.0;
    double reposition_time_s = 0.0;
};

struct HallReport
{
    HallSide horn;
    HallSide array;
    double heatmap_rms_db = 0.0;   // over the el 0/0 pairs
    double max_cdf_distance = 0.0; // worst sup-distance over the elevation pairs
};

struct CoveragePoint
{
    std::string label;
    double distance_m = 0.0; // repeater rows only
    double reflector_power_dbm = -200.0;
    double total_power_dbm = -200.0;
    double strongest_delay_s = 0.0; // delay of the strongest tap over all records (arc rows)
    double max_power_on_dbm = -200.0;
    double max_power_off_dbm = -200.0;
    double gain_db = 0.0; // max_power_on_dbm - max_power_off_dbm
};

struct CoverageReport
{
    std::string variant; // "specular", "anomalous" or "repeater"
    double reflector_delay_s = 0.0;
    double repeater_gain_db = 0.0;
    std::vector<CoveragePoint> points;
};

struct ScenarioResult
{
    std::string name;
    ScenarioKind kind = ScenarioKind::HallComparison;
    std::uint64_t master_seed = 0;
    std::optional<HallReport> hall;
    std::vector<CoverageReport> coverage;
};

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Results must be written by index.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)> &fn);

// Raw records of one side of the hall comparison, with what is needed to extract them later.
struct RecordSet
{
    AntennaPattern tx_pattern;
    AntennaPattern rx_pattern;
    double tx_power_dbm = 0.0;
    ExtractionConfig extraction;
    std::vector<MeasurementRecord> records;
};

RecordSet hall_records(const ScenarioConfig &config, bool phased_array, int jobs = 1);

HallReport run_hall_comparison(const ScenarioConfig &config, int jobs = 1);
CoverageReport run_reflector_arc(const ScenarioConfig &config, ReflectorKind kind, int jobs = 1);
CoverageReport run_repeater_hallway(const ScenarioConfig &config, int jobs = 1);

// Dispatches on config.kind.
ScenarioResult run_scenario(const ScenarioConfig &config, int jobs = 1);

// Geometry helpers shared by the runner and its tests.
Orientation orientation_towards(const Point3 &from, const Point3 &to);
std::vector<Point3> arc_points(const ArcSettings &arc);
std::string arc_label(const ArcSettings &arc, int index);
double reflector_path_length_m(const Scene &scene, const Point3 &reflector_center);

// Writes the result in one format ("csv", "json" or "svg") into dir and returns the files written.
// Throws IoError when the directory or a file cannot be written.
std::vector<std::filesystem::path> emit(const ScenarioResult &result, const std::string &format,
                                        const std::filesystem::path &dir);

// Text renderings used by emit() and the CLI.
std::string coverage_csv(const CoverageReport &report);
std::string heatmap_csv(const std::vector<HeatmapCell> &cells);
std::string cdf_csv(const std::vector<ElevationCdf> &cdfs);
std::string mpc_csv(const std::vector<Mpc> &mpcs);
std::string timing_csv(const HallReport &hall);

} // namespace mmsounder

#endif
