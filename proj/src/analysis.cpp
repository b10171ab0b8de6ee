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

#include "mmsounder/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>

namespace mmsounder
{

namespace
{
constexpr double kAngleQuantum = 1e6; // orientation keys are integer micro-degrees

long long quantize(double deg) { return std::llround(deg * kAngleQuantum); }

using OrientationKey = std::array<long long, 4>; // tx az, tx el, rx az, rx el

OrientationKey key_of(const Orientation &tx, const Orientation &rx)
{
    return {quantize(wrap_deg(tx.az_deg)), quantize(tx.el_deg), quantize(wrap_deg(rx.az_deg)), quantize(rx.el_deg)};
}

// Record lookup by absolute orientation plus the distinct grid values of every dimension.
struct OrientationGrid
{
    std::map<OrientationKey, std::size_t> index;
    std::array<std::vector<long long>, 4> values;

    explicit OrientationGrid(const std::vector<MeasurementRecord> &records)
    {
        std::array<std::set<long long>, 4> sets;
        for (std::size_t i = 0; i < records.size(); ++i)
        {
            const auto &c = records[i].cir;
            const OrientationKey k = key_of(c.tx_orientation, c.rx_orientation);
            auto it = index.find(k);
            if (it == index.end())
                index.emplace(k, i);
            else if (records[i].step_index < records[it->second].step_index)
                it->second = i;
            for (std::size_t d = 0; d < 4; ++d)
                sets[d].insert(k[d]);
        }
        for (std::size_t d = 0; d < 4; ++d)
            values[d].assign(sets[d].begin(), sets[d].end());
    }

    const std::size_t *find(const OrientationKey &k) const
    {
        auto it = index.find(k);
        return it == index.end() ? nullptr : &it->second;
    }
};

struct Detection
{
    std::size_t record = 0;
    std::size_t bin = 0;
    double power_mw = 0.0;
};

double bin_power_dbm(const MeasurementRecord &r, std::size_t bin) { return mw_to_dbm(std::norm(r.cir.taps[bin])); }

struct Refinement
{
    std::array<double, 4> offset_deg{}; // added to the seed orientation per dimension
    double gain_correction_db = 0.0;
};

// Known-curvature fit of the parabolic main lobe through the seed and its best neighbour in each
// dimension. Dimensions without a usable neighbour keep the grid value. A neighbour only has to stand
// clear of the noise, not pass detection, so weak paths seen off-grid still get their gain back.
Refinement refine_seed(const std::vector<MeasurementRecord> &records, const OrientationGrid &grid,
                       std::size_t seed_record, std::size_t bin, const AntennaPattern &txp, const AntennaPattern &rxp,
                       double usable_dbm)
{
    Refinement out;
    const auto &seed = records[seed_record];
    const OrientationKey key = key_of(seed.cir.tx_orientation, seed.cir.rx_orientation);
    const double y0 = bin_power_dbm(seed, bin);
    const std::array<double, 4> beamwidth{txp.beamwidth_az_deg, txp.beamwidth_el_deg, rxp.beamwidth_az_deg,
                                          rxp.beamwidth_el_deg};
    const std::array<double, 4> floor_db{txp.sidelobe_floor_db, txp.sidelobe_floor_db, rxp.sidelobe_floor_db,
                                         rxp.sidelobe_floor_db};

    for (std::size_t d = 0; d < 4; ++d)
    {
        const bool azimuth = (d % 2) == 0;
        const auto &vals = grid.values[d];
        const auto pos = static_cast<std::size_t>(std::lower_bound(vals.begin(), vals.end(), key[d]) - vals.begin());
        const std::size_t n = vals.size();
        if (n < 2)
            continue;

        std::vector<long long> candidates;
        if (azimuth)
        {
            candidates.push_back(vals[(pos + n - 1) % n]);
            if (n > 2)
                candidates.push_back(vals[(pos + 1) % n]);
        }
        else
        {
            if (pos > 0)
                candidates.push_back(vals[pos - 1]);
            if (pos + 1 < n)
                candidates.push_back(vals[pos + 1]);
        }

        const double k = 12.0 / (beamwidth[d] * beamwidth[d]);
        double best_y = -1e300;
        for (long long c : candidates)
        {
            OrientationKey nk = key;
            nk[d] = c;
            const std::size_t *j = grid.find(nk);
            if (!j)
                continue;
            const double y1 = bin_power_dbm(records[*j], bin);
            if (y1 <= usable_dbm || y1 <= best_y)
                continue;
            double delta = static_cast<double>(c - key[d]) / kAngleQuantum;
            if (azimuth)
                delta = wrap_deg(delta);
            if (delta == 0.0)
                continue;
            double a = delta / 2.0 + (y1 - y0) / (2.0 * k * delta);
            // The seed is not always the lobe peak: its best record may have been masked in delay by a
            // stronger neighbouring tap. The peak can still not lie beyond the stronger neighbour.
            a = std::clamp(a, -std::abs(delta), std::abs(delta));
            // Both points must still sit on the main lobe for the fit to be meaningful.
            if (k * (delta - a) * (delta - a) > floor_db[d] - 0.5 || k * a * a > floor_db[d] - 0.5)
                continue;
            best_y = y1;
            out.offset_deg[d] = a;
        }
    }
    for (std::size_t d = 0; d < 4; ++d)
    {
        const double k = 12.0 / (beamwidth[d] * beamwidth[d]);
        out.gain_correction_db += k * out.offset_deg[d] * out.offset_deg[d];
    }
    return out;
}

struct GroupMpc
{
    Mpc mpc;
    std::size_t bin = 0;
};
} // namespace

std::vector<double> pdp(const Cir &cir)
{
    std::vector<double> out(cir.taps.size());
    for (std::size_t i = 0; i < cir.taps.size(); ++i)
        out[i] = mw_to_dbm(std::norm(cir.taps[i]));
    return out;
}

double dbm_sum(std::span<const double> dbm)
{
    double mw = 0.0;
    for (double v : dbm)
        if (v > -200.0)
            mw += dbm_to_mw(v);
    return mw_to_dbm(mw);
}

double total_power_dbm(const Cir &cir)
{
    double mw = 0.0;
    for (const auto &t : cir.taps)
        mw += std::norm(t);
    return mw_to_dbm(mw);
}

MeasurementRecord make_record(Cir cir, int step_index, double tx_power_dbm, double tx_gain_dbi, double rx_gain_dbi)
{
    MeasurementRecord r;
    r.cir = std::move(cir);
    r.step_index = step_index;
    r.total_rx_power_dbm = total_power_dbm(r.cir);
    r.path_gain_db = path_gain(r, tx_power_dbm, tx_gain_dbi, rx_gain_dbi);
    return r;
}

double path_gain(const MeasurementRecord &record, double tx_power_dbm, double tx_gain_dbi, double rx_gain_dbi)
{
    return record.total_rx_power_dbm - tx_power_dbm - tx_gain_dbi - rx_gain_dbi;
}

void validate(const ExtractionConfig &cfg)
{
    if (!(cfg.detection_margin_db > 0.0))
        throw ConfigError("detection_margin_db must be positive");
    if (cfg.delay_merge_bins < 1)
        throw ConfigError("delay_merge_bins must be >= 1");
    if (cfg.angle_merge_deg && !(*cfg.angle_merge_deg > 0.0))
        throw ConfigError("angle_merge_deg must be positive");
    if (!(cfg.explain_tolerance_db >= 0.0))
        throw ConfigError("explain_tolerance_db must be >= 0");
    if (!std::isfinite(cfg.noise_floor_dbm_per_tap))
        throw ConfigError("noise floor must be finite");
}

double estimate_noise_floor_dbm(const std::vector<MeasurementRecord> &records)
{
    std::vector<double> powers;
    for (const auto &r : records)
        for (const auto &t : r.cir.taps)
            powers.push_back(std::norm(t));
    if (powers.empty())
        throw ConfigError("cannot estimate a noise floor from empty records");
    // The median of the lowest decile is the 5th percentile; for exponential power samples
    // the mean is q / -ln(0.95).
    const std::size_t idx = powers.size() / 20;
    std::nth_element(powers.begin(), powers.begin() + static_cast<long>(idx), powers.end());
    return mw_to_dbm(powers[idx] / -std::log(0.95));
}

RecoveredPadp extract_mpcs(const std::vector<MeasurementRecord> &records, const AntennaPattern &tx_pattern,
                           const AntennaPattern &rx_pattern, const ExtractionConfig &cfg, double tx_power_dbm)
{
    if (records.empty())
        throw ConfigError("extract_mpcs: no measurement records");
    validate(cfg);
    const double bin_width = records.front().cir.bin_width_s;
    const double noise = cfg.estimate_noise_floor ? estimate_noise_floor_dbm(records) : cfg.noise_floor_dbm_per_tap;
    const double threshold_dbm = noise + cfg.detection_margin_db;
    const double threshold_mw = dbm_to_mw(threshold_dbm);
    const double angle_merge =
        cfg.angle_merge_deg.value_or(std::max(tx_pattern.beamwidth_az_deg, rx_pattern.beamwidth_az_deg));
    const double tolerance = std::pow(10.0, cfg.explain_tolerance_db / 10.0);
    const auto merge_bins = static_cast<std::size_t>(cfg.delay_merge_bins);

    // (1) local maxima above threshold
    std::vector<Detection> detections;
    for (std::size_t r = 0; r < records.size(); ++r)
    {
        const auto &taps = records[r].cir.taps;
        for (std::size_t b = 0; b < taps.size(); ++b)
        {
            const double p = std::norm(taps[b]);
            if (p <= threshold_mw)
                continue;
            // Strict on the left, non-strict on the right: a flat top yields one detection.
            if (b > 0 && std::norm(taps[b - 1]) >= p)
                continue;
            if (b + 1 < taps.size() && std::norm(taps[b + 1]) > p)
                continue;
            detections.push_back({r, b, p});
        }
    }
    std::sort(detections.begin(), detections.end(), [&](const Detection &a, const Detection &b) {
        if (a.power_mw != b.power_mw)
            return a.power_mw > b.power_mw;
        if (records[a.record].step_index != records[b.record].step_index)
            return records[a.record].step_index < records[b.record].step_index;
        return a.bin < b.bin;
    });

    // (2) delay groups: chains of occupied bins no more than delay_merge_bins apart
    std::set<std::size_t> occupied;
    for (const auto &d : detections)
        occupied.insert(d.bin);
    std::map<std::size_t, std::size_t> group_of_bin;
    std::size_t groups = 0;
    {
        std::size_t prev = 0;
        bool first = true;
        for (std::size_t b : occupied)
        {
            if (first || b - prev > merge_bins)
                ++groups;
            group_of_bin[b] = groups - 1;
            prev = b;
            first = false;
        }
    }

    const OrientationGrid grid(records);
    std::vector<std::vector<GroupMpc>> group_mpcs(groups);
    std::vector<Mpc> found;

    // (3)-(5) strongest-first seeding inside each delay group
    for (const auto &det : detections)
    {
        auto &members = group_mpcs[group_of_bin[det.bin]];
        const auto &rec = records[det.record];
        const Orientation &tx = rec.cir.tx_orientation;
        const Orientation &rx = rec.cir.rx_orientation;

        double amplitude = 0.0;
        bool merged = false;
        for (const auto &g : members)
        {
            const Mpc &m = g.mpc;
            // Synthesized paths occupy a single tap, so only members in this bin can account for it.
            if (g.bin == det.bin)
            {
                const double p = tx_power_dbm + m.path_gain_db +
                                 gain_db(tx_pattern, tx, {m.aod_az_deg, m.aod_el_deg}) +
                                 gain_db(rx_pattern, rx, {m.aoa_az_deg, m.aoa_el_deg});
                amplitude += std::sqrt(dbm_to_mw(p));
            }
            if (std::abs(wrap_deg(tx.az_deg - m.aod_az_deg)) <= angle_merge &&
                std::abs(tx.el_deg - m.aod_el_deg) <= angle_merge &&
                std::abs(wrap_deg(rx.az_deg - m.aoa_az_deg)) <= angle_merge &&
                std::abs(rx.el_deg - m.aoa_el_deg) <= angle_merge)
                merged = true;
        }
        if (merged || det.power_mw <= amplitude * amplitude * tolerance)
            continue;

        Refinement ref;
        if (cfg.refine)
            ref = refine_seed(records, grid, det.record, det.bin, tx_pattern, rx_pattern, noise + 3.0);

        Mpc m;
        m.delay_s = static_cast<double>(det.bin) * bin_width;
        m.aod_az_deg = wrap_deg(tx.az_deg + ref.offset_deg[0]);
        m.aod_el_deg = tx.el_deg + ref.offset_deg[1];
        m.aoa_az_deg = wrap_deg(rx.az_deg + ref.offset_deg[2]);
        m.aoa_el_deg = rx.el_deg + ref.offset_deg[3];
        m.path_gain_db = mw_to_dbm(det.power_mw) + ref.gain_correction_db - tx_power_dbm -
                         tx_pattern.boresight_gain_dbi - rx_pattern.boresight_gain_dbi;
        double phase = std::arg(rec.cir.taps[det.bin]);
        if (phase < 0.0)
            phase += 2.0 * kPi;
        m.phase_rad = phase >= 2.0 * kPi ? 0.0 : phase;
        m.tag = PathTag::Unclassified;
        members.push_back({m, det.bin});
        found.push_back(m);
    }

    std::stable_sort(found.begin(), found.end(), [](const Mpc &a, const Mpc &b) {
        if (a.delay_s != b.delay_s)
            return a.delay_s < b.delay_s;
        return a.path_gain_db > b.path_gain_db;
    });

    // Residual: everything that is not a detection bin.
    std::vector<std::vector<bool>> detected(records.size());
    for (std::size_t r = 0; r < records.size(); ++r)
        detected[r].assign(records[r].cir.taps.size(), false);
    for (const auto &d : detections)
        detected[d.record][d.bin] = true;
    double residual = 0.0;
    for (std::size_t r = 0; r < records.size(); ++r)
        for (std::size_t b = 0; b < records[r].cir.taps.size(); ++b)
            if (!detected[r][b])
                residual += std::norm(records[r].cir.taps[b]);

    return RecoveredPadp{std::move(found), mw_to_dbm(residual)};
}

std::vector<CdfPoint> path_gain_cdf(std::vector<double> values)
{
    if (values.empty())
        throw ConfigError("path_gain_cdf: no values");
    // Path gains that agree to 1e-9 dB are the same value; summation order alone must not split a step.
    for (double &v : values)
        v = std::round(v * 1e9) / 1e9;
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    std::vector<CdfPoint> cdf;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (i + 1 < values.size() && values[i + 1] == values[i])
            continue;
        cdf.push_back({values[i], static_cast<double>(i + 1) / n});
    }
    return cdf;
}

double cdf_at(const std::vector<CdfPoint> &cdf, double x)
{
    auto it = std::upper_bound(cdf.begin(), cdf.end(), x, [](double v, const CdfPoint &p) { return v < p.value; });
    if (it == cdf.begin())
        return 0.0;
    return std::prev(it)->probability;
}

double cdf_sup_distance(const std::vector<CdfPoint> &a, const std::vector<CdfPoint> &b)
{
    double sup = 0.0;
    for (const auto *c : {&a, &b})
        for (const auto &p : *c)
            sup = std::max(sup, std::abs(cdf_at(a, p.value) - cdf_at(b, p.value)));
    return sup;
}

bool stochastically_dominates(const std::vector<CdfPoint> &upper, const std::vector<CdfPoint> &lower)
{
    for (const auto *c : {&upper, &lower})
        for (const auto &p : *c)
            if (cdf_at(upper, p.value) > cdf_at(lower, p.value) + 1e-12)
                return false;
    return true;
}

ReflectorVsTotal reflector_vs_total(const std::vector<MeasurementRecord> &records, double reflector_delay_s,
                                    int window_bins)
{
    if (records.empty())
        throw ConfigError("reflector_vs_total: no measurement records");
    if (window_bins < 0)
        throw ConfigError("reflector_vs_total: window_bins must be >= 0");
    ReflectorVsTotal out;
    for (const auto &r : records)
    {
        const auto n = static_cast<long long>(r.cir.taps.size());
        const long long center = std::llround(reflector_delay_s / r.cir.bin_width_s);
        if (center < 0 || center >= n)
            throw ConfigError("reflector delay " + std::to_string(reflector_delay_s) + " s is outside the tap window");
        double mw = 0.0;
        for (long long b = std::max(0LL, center - window_bins); b <= std::min(n - 1, center + window_bins); ++b)
            mw += std::norm(r.cir.taps[static_cast<std::size_t>(b)]);
        const double p = mw_to_dbm(mw);
        if (out.reflector_step < 0 || p > out.reflector_power_dbm)
        {
            out.reflector_power_dbm = p;
            out.reflector_step = r.step_index;
        }
        if (out.total_step < 0 || r.total_rx_power_dbm > out.total_power_dbm)
        {
            out.total_power_dbm = r.total_rx_power_dbm;
            out.total_step = r.step_index;
        }
    }
    return out;
}

std::vector<HeatmapCell> path_gain_heatmap(const std::vector<MeasurementRecord> &records,
                                           const std::vector<double> &tx_az, const std::vector<double> &rx_az,
                                           double tx_el_deg, double rx_el_deg)
{
    const OrientationGrid grid(records);
    std::vector<HeatmapCell> cells;
    cells.reserve(tx_az.size() * rx_az.size());
    for (double t : tx_az)
        for (double r : rx_az)
        {
            const std::size_t *idx = grid.find(key_of({t, tx_el_deg}, {r, rx_el_deg}));
            if (!idx)
                throw ConfigError("heatmap pair (" + std::to_string(t) + ", " + std::to_string(r) +
                                  ") is not covered by the records");
            cells.push_back({wrap_deg(t), wrap_deg(r), records[*idx].path_gain_db});
        }
    return cells;
}

} // namespace mmsounder
