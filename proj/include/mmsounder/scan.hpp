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

#ifndef MMSOUNDER_SCAN_HPP
#define MMSOUNDER_SCAN_HPP

#include "mmsounder/antenna.hpp"

#include <string>
#include <vector>

namespace mmsounder
{

enum class ScanMode
{
    HornGimbal,
    PhasedArrayHybrid
};

struct ScanStep
{
    Orientation tx;        // absolute pointing
    Orientation rx;        // absolute pointing
    double dwell_s = 0.0;
    Orientation tx_offset; // electronic offset from the gimbal (PhasedArrayHybrid)
    Orientation rx_offset;
    int tx_gimbal = -1;    // index into ScanSchedule::tx_gimbals, -1 for horn mode
    int rx_gimbal = -1;
};

struct ScanSchedule
{
    std::vector<ScanStep> steps;
    ScanMode mode = ScanMode::HornGimbal;
    std::vector<Orientation> tx_gimbals; // PhasedArrayHybrid only
    std::vector<Orientation> rx_gimbals;

    std::size_t size() const { return steps.size(); }
};

struct TimingModel
{
    double horn_step_s = 1.0;
    double array_switch_s = 0.015;
    double gimbal_reposition_s = 10.0;
};

void validate(const TimingModel &timing);

// Angles start, start + step, ..., up to and including start + span.
std::vector<double> sweep_angles(double start_deg, double span_deg, double step_deg);

// Full Cartesian product, loop order TX el > TX az > RX el > RX az (innermost).
// Throws ConfigError on empty or duplicate angle sets.
ScanSchedule horn_schedule(const std::vector<double> &tx_az, const std::vector<double> &tx_el,
                           const std::vector<double> &rx_az, const std::vector<double> &rx_el,
                           const TimingModel &timing = {});

// Gimbal azimuths per side plus a shared electronic grid. For every (TX gimbal, RX gimbal) pair the
// electronic product |el|*|az| x |el|*|az| is visited. Throws ConfigError if an electronic offset is
// outside either pattern's steering limits.
ScanSchedule phased_array_schedule(const std::vector<double> &tx_gimbal_az, const std::vector<double> &rx_gimbal_az,
                                   const std::vector<double> &electronic_az, const std::vector<double> &el,
                                   const AntennaPattern &tx_pattern, const AntennaPattern &rx_pattern,
                                   const TimingModel &timing = {});

// Fine azimuth offsets in [-span, span] around the nominal aligned orientations.
ScanSchedule alignment_scan(double tx_span_deg, double tx_step_deg, double rx_span_deg, double rx_step_deg,
                            const Orientation &tx_nominal = {}, const Orientation &rx_nominal = {},
                            const TimingModel &timing = {});

// Headline measurement time: M * horn_step_s, or steps * array_switch_s for the hybrid mode.
double total_time(const ScanSchedule &schedule, const TimingModel &timing);

// Gimbal moves between consecutive steps (hybrid mode), reported apart from total_time.
int gimbal_repositions(const ScanSchedule &schedule);
double repositioning_time(const ScanSchedule &schedule, const TimingModel &timing);

// CSV: step_index,tx_az,tx_el,rx_az,rx_el,dwell_s
std::string schedule_csv(const ScanSchedule &schedule);

} // namespace mmsounder

#endif
