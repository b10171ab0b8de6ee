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

#ifndef MMSOUNDER_SOUNDER_HPP
#define MMSOUNDER_SOUNDER_HPP

#include "mmsounder/antenna.hpp"
#include "mmsounder/scene.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace mmsounder
{

using cdouble = std::complex<double>;
using Waveform = std::vector<cdouble>;

struct SounderConfig
{
    double carrier_hz = 28e9;
    double sample_rate_hz = 3.072e9;
    int zc_length = 2048;
    int zc_root = 1;
    int oversample = 2;
    double rrc_rolloff = 0.22;
    double tx_power_dbm = 0.0;
    double noise_floor_dbm_per_tap = -100.0;
    bool add_noise = true;
    int averaging = 1;                  // noise realizations averaged per measurement
    double adc_dynamic_range_db = 60.0; // relative to the strongest tap of one CIR
    double max_path_loss_db = 185.0;    // paths with -path_gain_db above this are not measurable
    std::optional<double> max_delay_s;  // tap window; defaults to the full periodic window

    // Delay-bin spacing: oversample / sample_rate (0.651 ns for the defaults).
    double bin_width_s() const { return oversample / sample_rate_hz; }
    // Number of taps in a Cir.
    std::size_t tap_count() const;
};

void validate(const SounderConfig &cfg);

// Complex channel impulse response on the delay-bin grid. |tap|^2 is in mW.
struct Cir
{
    std::vector<cdouble> taps;
    double bin_width_s = 0.0;
    Orientation tx_orientation;
    Orientation rx_orientation;
    std::uint64_t noise_realization_seed = 0;
};

// Unfiltered Zadoff-Chu sequence exp(-j*pi*root*n*(n + length%2)/length).
Waveform zc_sequence(int length, int root);

// Sounding burst: ZC sequence zero-stuffed by `oversample` and shaped with a root-raised-cosine
// filter applied over one period (circular). oversample == 1 returns the bare sequence.
Waveform generate_zc(int length, int root, int oversample, double rrc_rolloff);
Waveform generate_zc(const SounderConfig &cfg);

// Discrete delay line used to drive correlate(): one (delay, complex gain) pair per tap.
struct WaveformPath
{
    double delay_s = 0.0;
    cdouble gain{1.0, 0.0};
};

// Circular band-limited propagation of a periodic burst through the given paths.
// Fractional delays are realized as a linear phase ramp over the DFT bins.
Waveform apply_channel(const Waveform &burst, const std::vector<WaveformPath> &paths, double sample_rate_hz);

// Matched-filter correlation against the reference burst, normalized by the reference energy
// and decimated to the delay-bin grid. A unit-gain channel yields a unit tap at bin 0.
Cir correlate(const Waveform &received, const Waveform &reference, const SounderConfig &cfg);

// Forward model of one directional measurement: each path lands on bin round(delay / bin_width)
// with power P_TX + alpha + G_TX + G_RX (+ extra_gain_db); unmeasurable paths are skipped,
// signal below the ADC dynamic range is zeroed, then complex Gaussian noise is added.
Cir synthesize_measurement(const Padp &padp, const Orientation &tx_orient, const Orientation &rx_orient,
                           const AntennaPattern &tx_pattern, const AntennaPattern &rx_pattern,
                           const SounderConfig &cfg, std::uint64_t seed, double extra_gain_db = 0.0);

// Mixes a master seed with a stream id and an index; order-independent per-position seeds.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t index);

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
// Floor-clamped at -200 dBm.
double mw_to_dbm(double mw);

} // namespace mmsounder

#endif
