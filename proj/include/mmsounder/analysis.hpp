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

#ifndef MMSOUNDER_ANALYSIS_HPP
#define MMSOUNDER_ANALYSIS_HPP

#include "mmsounder/antenna.hpp"
#include "mmsounder/scene.hpp"
#include "mmsounder/sounder.hpp"

#include <optional>
#include <span>
#include <vector>

namespace mmsounder
{

// Power per delay bin in dBm (|tap|^2 with a 1 mW reference), floor-clamped at -200 dBm.
std::vector<double> pdp(const Cir &cir);

// Power sum of dBm values, returned in dBm.
double dbm_sum(std::span<const double> dbm);

// Total received power (sum of the PDP) in dBm.
double total_power_dbm(const Cir &cir);

struct MeasurementRecord
{
    Cir cir;
    double total_rx_power_dbm = -200.0;
    double path_gain_db = 0.0;
    int step_index = 0;
};

// Builds a record: total power from the PDP, path gain de-embedded with boresight gains.
MeasurementRecord make_record(Cir cir, int step_index, double tx_power_dbm, double tx_gain_dbi, double rx_gain_dbi);

// alpha_hat = P_RX - P_TX - G_TX - G_RX
double path_gain(const MeasurementRecord &record, double tx_power_dbm, double tx_gain_dbi, double rx_gain_dbi);

struct ExtractionConfig
{
    double detection_margin_db = 10.0;
    int delay_merge_bins = 1;
    std::optional<double> angle_merge_deg; // defaults to the wider azimuth beamwidth of the two patterns
    double noise_floor_dbm_per_tap = -100.0;
    bool estimate_noise_floor = false;
    // Sub-grid angle/gain refinement from neighbouring scan positions (parabolic main lobe).
    bool refine = true;
    // Detections up to this much above the coherent prediction of already extracted MPCs are
    // attributed to them rather than spawning new components.
    double explain_tolerance_db = 6.0;
};

void validate(const ExtractionConfig &cfg);

struct RecoveredPadp
{
    std::vector<Mpc> mpcs;
    double residual_power_db = -200.0; // dBm sum of all bins that were not detected
};

// Peak-group-assign extractor.
//
//  1. per record, PDP local maxima above noise_floor + detection_margin_db are detections;
//  2. detections whose bins chain within delay_merge_bins form a delay group;
//  3. inside a group the strongest unexplained detection (ties: lowest step_index) seeds an MPC
//     whose AoD/AoA is the (tx, rx) orientation of that record, refined from neighbouring grid
//     positions when enabled;
//  4. alpha is de-embedded from the seed bin power with the boresight gains, as in path_gain();
//  5. phase is taken from the seed tap.
// A detection counts as explained when its power does not exceed, by more than explain_tolerance_db,
// the coherent sum predicted through the antenna patterns by MPCs already seeded in the same bin, or
// when its orientation is within angle_merge_deg of an existing MPC of the delay group. Throws
// ConfigError for an empty record list.
RecoveredPadp extract_mpcs(const std::vector<MeasurementRecord> &records, const AntennaPattern &tx_pattern,
                           const AntennaPattern &rx_pattern, const ExtractionConfig &cfg, double tx_power_dbm);

// Mean per-tap noise power estimated as the median of the lowest-decile bin powers, rescaled
// by the exponential quantile so that it estimates the mean.
double estimate_noise_floor_dbm(const std::vector<MeasurementRecord> &records);

struct CdfPoint
{
    double value = 0.0;
    double probability = 0.0;
};

// Empirical CDF over the distinct sorted values, rounded to 1e-9 dB first. Throws ConfigError when empty.
std::vector<CdfPoint> path_gain_cdf(std::vector<double> values);

// F(x) of an empirical CDF (0 below the first value).
double cdf_at(const std::vector<CdfPoint> &cdf, double x);

// Kolmogorov-Smirnov style sup |F_a - F_b|.
double cdf_sup_distance(const std::vector<CdfPoint> &a, const std::vector<CdfPoint> &b);

// True iff `upper` is first-order stochastically larger: F_upper(x) <= F_lower(x) for all x.
bool stochastically_dominates(const std::vector<CdfPoint> &upper, const std::vector<CdfPoint> &lower);

struct ReflectorVsTotal
{
    double reflector_power_dbm = -200.0;
    double total_power_dbm = -200.0;
    int reflector_step = -1; // step_index of the record holding each maximum
    int total_step = -1;
};

// Best-alignment powers: max over records of the bins within +-window_bins of the reflector delay,
// and max over records of total_rx_power_dbm. Throws ConfigError if the delay is outside the taps.
ReflectorVsTotal reflector_vs_total(const std::vector<MeasurementRecord> &records, double reflector_delay_s,
                                    int window_bins);

struct HeatmapCell
{
    double tx_az_deg = 0.0;
    double rx_az_deg = 0.0;
    double path_gain_db = 0.0;
};

// Path gain for every (tx_az, rx_az) pair at fixed elevations, rows ordered tx-major.
// Records are matched by absolute orientation; duplicates resolve to the lowest step_index.
// Throws ConfigError when a pair is not covered by any record.
std::vector<HeatmapCell> path_gain_heatmap(const std::vector<MeasurementRecord> &records,
                                           const std::vector<double> &tx_az, const std::vector<double> &rx_az,
                                           double tx_el_deg, double rx_el_deg);

} // namespace mmsounder

#endif
