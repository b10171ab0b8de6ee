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

#ifndef MMSOUNDER_ANTENNA_HPP
#define MMSOUNDER_ANTENNA_HPP

#include <limits>

namespace mmsounder
{

// Antenna pointing or arrival direction. az in [-180, 180), el in [-90, 90].
struct Orientation
{
    double az_deg = 0.0;
    double el_deg = 0.0;

    friend bool operator==(const Orientation &, const Orientation &) = default;
};

// Parametric directional pattern: parabolic-in-dB main lobe with a hard sidelobe floor.
//
// Loss relative to boresight is 12 * [(daz / bw_az)^2 + (del / bw_el)^2], capped at
// sidelobe_floor_db, so the pattern is exactly 3 dB down at half a beamwidth.
// Steering limits describe the electronic field of view relative to the mount;
// they are infinite for mechanically steered antennas.
struct AntennaPattern
{
    double boresight_gain_dbi = 0.0;
    double beamwidth_az_deg = 360.0;
    double beamwidth_el_deg = 180.0;
    double sidelobe_floor_db = 25.0;
    double steer_limit_az_deg = std::numeric_limits<double>::infinity();
    double steer_limit_el_deg = std::numeric_limits<double>::infinity();
    bool scan_loss = false; // cosine element-factor loss for electronic offsets
};

// Throws ConfigError on non-positive beamwidths, floor or steering limits.
void validate(const AntennaPattern &pattern);

// Gain in dBi towards `arrival` when the main lobe points at `pointing`.
double gain_db(const AntennaPattern &pattern, const Orientation &pointing, const Orientation &arrival);

// True iff the electronic offset lies inside the steering limits in both planes.
bool steerable(const AntennaPattern &pattern, const Orientation &electronic_offset);

// Extra loss (dB, >= 0) for steering off the array normal; 0 when scan_loss is off.
double scan_loss_db(const AntennaPattern &pattern, const Orientation &electronic_offset);

// Pencil-beam estimate sqrt(41253 / G_lin) in degrees, used for both planes.
double beamwidth_from_gain_deg(double gain_dbi);

// 17 dBi horn, 24 deg azimuth / 26 deg elevation half-power beamwidth, mechanically steered.
AntennaPattern horn_antenna();

// Phased array front ends (39 dBi TX, 21.5 dBi RX), +-40 deg az / +-20 deg el field of view.
// Beamwidths default to beamwidth_from_gain_deg and are usually overridden per scenario.
AntennaPattern phased_array_tx();
AntennaPattern phased_array_rx();

} // namespace mmsounder

#endif
