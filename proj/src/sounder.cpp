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

#include "mmsounder/sounder.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>
#include <string>

namespace mmsounder
{

namespace
{
// FFTW planning is not thread-safe; execution is.
std::mutex &planner_mutex()
{
    static std::mutex m;
    return m;
}

void fft_inplace(std::vector<cdouble> &data, bool inverse)
{
    const int n = static_cast<int>(data.size());
    auto *ptr = reinterpret_cast<fftw_complex *>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(n, ptr, ptr, inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    if (inverse)
    {
        const double scale = 1.0 / n;
        for (auto &x : data)
            x *= scale;
    }
}

// Signed DFT index for bin k of an n-point transform.
long signed_bin(std::size_t k, std::size_t n)
{
    return k < (n + 1) / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

// Root-raised-cosine amplitude response at normalized frequency f*T_symbol.
double rrc_response(double ft, double beta)
{
    const double a = std::abs(ft);
    const double lo = (1.0 - beta) / 2.0;
    const double hi = (1.0 + beta) / 2.0;
    if (a <= lo)
        return 1.0;
    if (a > hi)
        return 0.0;
    return std::sqrt(0.5 * (1.0 + std::cos(kPi / beta * (a - lo))));
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
} // namespace

double mw_to_dbm(double mw)
{
    constexpr double floor_dbm = -200.0;
    if (!(mw > 0.0))
        return floor_dbm;
    return std::max(10.0 * std::log10(mw), floor_dbm);
}

std::size_t SounderConfig::tap_count() const
{
    const auto full = static_cast<std::size_t>(zc_length);
    if (!max_delay_s)
        return full;
    const auto n = static_cast<std::size_t>(std::ceil(*max_delay_s / bin_width_s())) + 1;
    return std::min(n, full);
}

void validate(const SounderConfig &cfg)
{
    if (cfg.zc_length < 2 || (cfg.zc_length & (cfg.zc_length - 1)) != 0)
        throw ConfigError("zc_length must be a power of two");
    if (cfg.zc_root < 1 || std::gcd(cfg.zc_root, cfg.zc_length) != 1)
        throw ConfigError("zc_root must be positive and coprime with zc_length");
    if (cfg.oversample < 1)
        throw ConfigError("oversample must be >= 1");
    if (!(cfg.rrc_rolloff > 0.0 && cfg.rrc_rolloff <= 1.0))
        throw ConfigError("rrc_rolloff must be in (0, 1]");
    if (!(cfg.sample_rate_hz > 0.0) || !(cfg.carrier_hz > 0.0))
        throw ConfigError("sample_rate_hz and carrier_hz must be positive");
    if (cfg.averaging < 1)
        throw ConfigError("averaging must be >= 1");
    if (!(cfg.adc_dynamic_range_db > 0.0) || !(cfg.max_path_loss_db > 0.0))
        throw ConfigError("dynamic range and max path loss must be positive");
    if (!std::isfinite(cfg.tx_power_dbm) || !std::isfinite(cfg.noise_floor_dbm_per_tap))
        throw ConfigError("tx power and noise floor must be finite");
    if (cfg.max_delay_s && !(*cfg.max_delay_s > 0.0))
        throw ConfigError("max_delay_s must be positive");
}

Waveform zc_sequence(int length, int root)
{
    if (length < 1)
        throw ConfigError("ZC length must be positive");
    if (root < 1 || std::gcd(root, length) != 1)
        throw ConfigError("ZC root " + std::to_string(root) + " is not coprime with length " + std::to_string(length));
    Waveform x(static_cast<std::size_t>(length));
    const long long n_len = length;
    const long long odd = length % 2;
    for (long long n = 0; n < n_len; ++n)
    {
        // Reduce the exponent modulo 2*length before scaling to keep the phase exact for long sequences.
        const long long k = (static_cast<long long>(root) * n % (2 * n_len)) * ((n + odd) % (2 * n_len)) % (2 * n_len);
        x[static_cast<std::size_t>(n)] = std::polar(1.0, -kPi * static_cast<double>(k) / static_cast<double>(n_len));
    }
    return x;
}

Waveform generate_zc(int length, int root, int oversample, double rrc_rolloff)
{
    if (oversample < 1)
        throw ConfigError("oversample must be >= 1");
    if (!(rrc_rolloff > 0.0 && rrc_rolloff <= 1.0))
        throw ConfigError("rrc_rolloff must be in (0, 1]");
    const Waveform base = zc_sequence(length, root);
    if (oversample == 1)
        return base;

    const std::size_t n = base.size();
    const std::size_t len = n * static_cast<std::size_t>(oversample);
    Waveform up(len, cdouble{});
    for (std::size_t i = 0; i < n; ++i)
        up[i * static_cast<std::size_t>(oversample)] = base[i];

    fft_inplace(up, false);
    for (std::size_t k = 0; k < len; ++k)
    {
        const double ft = static_cast<double>(signed_bin(k, len)) / static_cast<double>(n);
        up[k] *= rrc_response(ft, rrc_rolloff);
    }
    fft_inplace(up, true);
    return up;
}

Waveform generate_zc(const SounderConfig &cfg)
{
    return generate_zc(cfg.zc_length, cfg.zc_root, cfg.oversample, cfg.rrc_rolloff);
}

Waveform apply_channel(const Waveform &burst, const std::vector<WaveformPath> &paths, double sample_rate_hz)
{
    const std::size_t len = burst.size();
    Waveform spec = burst;
    fft_inplace(spec, false);
    for (std::size_t k = 0; k < len; ++k)
    {
        const double f = static_cast<double>(signed_bin(k, len)) * sample_rate_hz / static_cast<double>(len);
        cdouble h{};
        for (const auto &p : paths)
            h += p.gain * std::polar(1.0, -2.0 * kPi * f * p.delay_s);
        spec[k] *= h;
    }
    fft_inplace(spec, true);
    return spec;
}

Cir correlate(const Waveform &received, const Waveform &reference, const SounderConfig &cfg)
{
    if (received.size() != reference.size())
        throw ConfigError("correlate: received length " + std::to_string(received.size()) +
                          " does not match reference length " + std::to_string(reference.size()));
    if (reference.empty())
        throw ConfigError("correlate: empty reference");
    const auto os = static_cast<std::size_t>(cfg.oversample);
    if (reference.size() % os != 0)
        throw ConfigError("correlate: reference length is not a multiple of the oversampling factor");

    double energy = 0.0;
    for (const auto &x : reference)
        energy += std::norm(x);

    Waveform y = received;
    Waveform x = reference;
    fft_inplace(y, false);
    fft_inplace(x, false);
    for (std::size_t k = 0; k < y.size(); ++k)
        y[k] *= std::conj(x[k]);
    fft_inplace(y, true);

    Cir cir;
    cir.bin_width_s = cfg.bin_width_s();
    const std::size_t bins = std::min(reference.size() / os, cfg.tap_count());
    cir.taps.resize(bins);
    for (std::size_t b = 0; b < bins; ++b)
        cir.taps[b] = y[b * os] / energy;
    return cir;
}

Cir synthesize_measurement(const Padp &padp, const Orientation &tx_orient, const Orientation &rx_orient,
                           const AntennaPattern &tx_pattern, const AntennaPattern &rx_pattern,
                           const SounderConfig &cfg, std::uint64_t seed, double extra_gain_db)
{
    const std::size_t n = cfg.tap_count();
    const double bw = cfg.bin_width_s();

    Cir cir;
    cir.taps.assign(n, cdouble{});
    cir.bin_width_s = bw;
    cir.tx_orientation = tx_orient;
    cir.rx_orientation = rx_orient;
    cir.noise_realization_seed = seed;

    for (const Mpc &m : padp.mpcs)
    {
        if (-m.path_gain_db > cfg.max_path_loss_db)
            continue;
        const long long bin = std::llround(m.delay_s / bw);
        if (bin < 0 || static_cast<std::size_t>(bin) >= n)
            throw ConfigError("MPC delay " + std::to_string(m.delay_s) + " s lies outside the tap window");
        const double p_dbm = cfg.tx_power_dbm + m.path_gain_db +
                             gain_db(tx_pattern, tx_orient, {m.aod_az_deg, m.aod_el_deg}) +
                             gain_db(rx_pattern, rx_orient, {m.aoa_az_deg, m.aoa_el_deg}) + extra_gain_db;
        cir.taps[static_cast<std::size_t>(bin)] += std::polar(std::sqrt(dbm_to_mw(p_dbm)), m.phase_rad);
    }

    double peak = 0.0;
    for (const auto &t : cir.taps)
        peak = std::max(peak, std::norm(t));
    if (peak > 0.0)
    {
        const double clip = peak * std::pow(10.0, -cfg.adc_dynamic_range_db / 10.0);
        for (auto &t : cir.taps)
            if (std::norm(t) < clip)
                t = cdouble{};
    }

    if (cfg.add_noise)
    {
        std::mt19937_64 rng(seed);
        const double sigma = std::sqrt(dbm_to_mw(cfg.noise_floor_dbm_per_tap) / cfg.averaging / 2.0);
        std::normal_distribution<double> gauss(0.0, sigma);
        for (auto &t : cir.taps)
        {
            const double re = gauss(rng);
            const double im = gauss(rng);
            t += cdouble{re, im};
        }
    }
    return cir;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t index)
{
    return splitmix64(splitmix64(splitmix64(master_seed) ^ stream) ^ index);
}

} // namespace mmsounder
