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

// Helpers shared by the unit tests and the acceptance binary: a random-scene generator for the
// sounding round trip, an independent forward oracle and the MPC matcher.

#ifndef MMSOUNDER_TESTS_SUPPORT_HPP
#define MMSOUNDER_TESTS_SUPPORT_HPP

#include "mmsounder/analysis.hpp"
#include "mmsounder/runner.hpp"
#include "mmsounder/scan.hpp"
#include "mmsounder/sounder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace mmtest
{
using namespace mmsounder;

inline std::string source_path(const std::string &rel) { return std::string(MMSOUNDER_SOURCE_DIR) + "/" + rel; }

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }

// Azimuth grids used by the seminar-hall measurement: 18 angles, TX drops 0, RX drops -180.
inline std::vector<double> hall_az(double skipped)
{
    std::vector<double> out;
    for (int a = -180; a < 180; a += 20)
        if (a != static_cast<int>(skipped))
            out.push_back(a);
    return out;
}

inline ScanSchedule hall_horn_schedule()
{
    return horn_schedule(hall_az(0.0), {-20.0, 0.0, 20.0}, hall_az(-180.0), {-20.0, 0.0, 20.0});
}

// Written out again here on purpose, so tests do not lean on gain_db() to check gain_db().
inline double oracle_gain(double g0, double bw_az, double bw_el, double floor_db, double daz, double del)
{
    double d = std::fmod(daz + 540.0, 360.0) - 180.0;
    const double loss = 12.0 * ((d / bw_az) * (d / bw_az) + (del / bw_el) * (del / bw_el));
    return g0 - std::min(loss, floor_db);
}

inline double angle_diff(double a, double b)
{
    const double d = std::fmod(a - b + 540.0, 360.0) - 180.0;
    return std::abs(d);
}

// Random 1-5 path scene. Paths that share a delay neighbourhood are kept at least 50 deg apart in
// AoD or AoA azimuth, otherwise no directional sounder could separate them.
inline Padp random_padp(std::mt19937_64 &rng, double bin_s)
{
    std::uniform_int_distribution<int> count(1, 5);
    std::uniform_real_distribution<double> gain(-110.0, -60.0), delay(5e-9, 100e-9), az(-180.0, 180.0),
        el(-25.0, 25.0), phase(0.0, 2.0 * kPi);
    Padp padp;
    const int n = count(rng);
    int guard = 0;
    while (static_cast<int>(padp.mpcs.size()) < n && guard++ < 1000)
    {
        Mpc m;
        m.path_gain_db = gain(rng);
        m.delay_s = delay(rng);
        m.aod_az_deg = wrap_deg(az(rng));
        m.aoa_az_deg = wrap_deg(az(rng));
        m.aod_el_deg = el(rng);
        m.aoa_el_deg = el(rng);
        m.phase_rad = phase(rng);
        bool ok = true;
        for (const auto &o : padp.mpcs)
        {
            const bool near_delay = std::abs(o.delay_s - m.delay_s) < 3.0 * bin_s;
            const bool apart = angle_diff(o.aod_az_deg, m.aod_az_deg) >= 50.0 ||
                               angle_diff(o.aoa_az_deg, m.aoa_az_deg) >= 50.0;
            if (near_delay && !apart)
                ok = false;
        }
        if (ok)
            padp.mpcs.push_back(m);
    }
    std::sort(padp.mpcs.begin(), padp.mpcs.end(), [](const Mpc &a, const Mpc &b) { return a.delay_s < b.delay_s; });
    return padp;
}

enum class Visibility
{
    Hidden,
    Borderline,
    Visible
};

// Per-record tap power of every path from the oracle pattern, then the limits a path has to clear
// in at least one record: detection threshold, the dynamic-range clip and, for paths sharing a delay
// bin, a minimum ratio over the other paths leaking into that same tap.
inline std::vector<Visibility> oracle_visibility(const Padp &padp, const ScanSchedule &schedule,
                                                 const AntennaPattern &p, double tx_power_dbm, double threshold_dbm,
                                                 double dynamic_range_db, double bin_s, double min_sir_db = 10.0)
{
    std::vector<long> bin;
    for (const auto &m : padp.mpcs)
        bin.push_back(std::lround(m.delay_s / bin_s));
    std::vector<double> best_margin(padp.mpcs.size(), -1e9);
    for (const auto &st : schedule.steps)
    {
        std::vector<double> pw;
        double strongest = -1e9;
        for (const auto &m : padp.mpcs)
        {
            const double g_tx = oracle_gain(p.boresight_gain_dbi, p.beamwidth_az_deg, p.beamwidth_el_deg,
                                            p.sidelobe_floor_db, st.tx.az_deg - m.aod_az_deg,
                                            st.tx.el_deg - m.aod_el_deg);
            const double g_rx = oracle_gain(p.boresight_gain_dbi, p.beamwidth_az_deg, p.beamwidth_el_deg,
                                            p.sidelobe_floor_db, st.rx.az_deg - m.aoa_az_deg,
                                            st.rx.el_deg - m.aoa_el_deg);
            pw.push_back(tx_power_dbm + m.path_gain_db + g_tx + g_rx);
            strongest = std::max(strongest, pw.back());
        }
        for (std::size_t i = 0; i < pw.size(); ++i)
        {
            double margin = std::min(pw[i] - threshold_dbm, pw[i] - (strongest - dynamic_range_db));
            double interference = 0.0;
            for (std::size_t j = 0; j < pw.size(); ++j)
                if (j != i && std::abs(bin[j] - bin[i]) <= 1)
                    interference += db_to_lin(pw[j]);
            if (interference > 0.0)
                margin = std::min(margin, pw[i] - lin_to_db(interference) - min_sir_db);
            best_margin[i] = std::max(best_margin[i], margin);
        }
    }
    std::vector<Visibility> out;
    for (double m : best_margin)
        out.push_back(m > 0.5 ? Visibility::Visible : (m > -0.5 ? Visibility::Borderline : Visibility::Hidden));
    return out;
}

struct MatchTolerance
{
    double delay_s;
    double angle_deg;
    double gain_db;
};

// Same delay bin and grid cell, gain left out.
inline bool associated(const Mpc &truth, const Mpc &est, const MatchTolerance &tol)
{
    return std::abs(truth.delay_s - est.delay_s) <= tol.delay_s + 1e-15 &&
           angle_diff(truth.aod_az_deg, est.aod_az_deg) <= tol.angle_deg + 1e-9 &&
           angle_diff(truth.aoa_az_deg, est.aoa_az_deg) <= tol.angle_deg + 1e-9 &&
           std::abs(truth.aod_el_deg - est.aod_el_deg) <= tol.angle_deg + 1e-9 &&
           std::abs(truth.aoa_el_deg - est.aoa_el_deg) <= tol.angle_deg + 1e-9;
}

inline bool matches(const Mpc &truth, const Mpc &est, const MatchTolerance &tol)
{
    return associated(truth, est, tol) && std::abs(truth.path_gain_db - est.path_gain_db) <= tol.gain_db + 1e-9;
}

struct RoundTripOutcome
{
    int visible = 0;
    int missed = 0;   // visible truth without exactly one associated estimate, or with a wrong gain
    int spurious = 0; // estimates that belong to no path at all
    std::string detail;
};

// A visible path must own exactly one estimate and that one must match in gain too. Paths that are
// not visible may or may not show up, and when they do the gain is free: the tap they sit in also
// carries other paths. Anything not associated with a real path is spurious.
inline RoundTripOutcome score_round_trip(const Padp &truth, const std::vector<Visibility> &vis,
                                         const std::vector<Mpc> &est, const MatchTolerance &tol)
{
    RoundTripOutcome r;
    for (std::size_t i = 0; i < truth.mpcs.size(); ++i)
    {
        if (vis[i] != Visibility::Visible)
            continue;
        ++r.visible;
        int assoc = 0, hits = 0;
        for (const auto &e : est)
        {
            assoc += associated(truth.mpcs[i], e, tol) ? 1 : 0;
            hits += matches(truth.mpcs[i], e, tol) ? 1 : 0;
        }
        if (assoc != 1 || hits != 1)
        {
            ++r.missed;
            r.detail += "truth " + std::to_string(i) + " associated " + std::to_string(assoc) + ", matched " +
                        std::to_string(hits) + "; ";
        }
    }
    for (const auto &e : est)
    {
        bool any = false;
        for (const auto &t : truth.mpcs)
            any = any || associated(t, e, tol);
        if (!any)
        {
            ++r.spurious;
            r.detail += "spurious at " + std::to_string(e.delay_s * 1e9) + " ns; ";
        }
    }
    return r;
}

// Synthesizes the full horn grid for a scene and extracts it.
struct RoundTripRun
{
    Padp truth;
    std::vector<Visibility> visibility;
    RecoveredPadp recovered;
    RoundTripOutcome outcome;
};

inline RoundTripRun run_round_trip(std::uint64_t scene_seed)
{
    SounderConfig cfg;
    cfg.add_noise = false;
    cfg.max_delay_s = 110e-9;
    ExtractionConfig ex;
    const AntennaPattern horn = horn_antenna();
    const ScanSchedule schedule = hall_horn_schedule();

    RoundTripRun run;
    std::mt19937_64 rng(scene_seed);
    run.truth = random_padp(rng, cfg.bin_width_s());
    run.visibility = oracle_visibility(run.truth, schedule, horn, cfg.tx_power_dbm,
                                       ex.noise_floor_dbm_per_tap + ex.detection_margin_db, cfg.adc_dynamic_range_db,
                                       cfg.bin_width_s());

    std::vector<MeasurementRecord> records(schedule.size());
    for (std::size_t i = 0; i < schedule.size(); ++i)
    {
        const auto &st = schedule.steps[i];
        records[i] = make_record(synthesize_measurement(run.truth, st.tx, st.rx, horn, horn, cfg, derive_seed(1, 1, i)),
                                 static_cast<int>(i), cfg.tx_power_dbm, horn.boresight_gain_dbi,
                                 horn.boresight_gain_dbi);
    }
    run.recovered = extract_mpcs(records, horn, horn, ex, cfg.tx_power_dbm);
    run.outcome = score_round_trip(run.truth, run.visibility, run.recovered.mpcs,
                                   {cfg.bin_width_s(), 20.0, 3.0});
    return run;
}

} // namespace mmtest

#endif
