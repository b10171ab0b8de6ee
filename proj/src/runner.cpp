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

#include "mmsounder/runner.hpp"
#include "mmsounder/serialize.hpp"
#include "mmsounder/svg.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace mmsounder
{

namespace
{
// Stream ids keep the noise of every measurement campaign independent of the others.
constexpr std::uint64_t kStreamHorn = 1;
constexpr std::uint64_t kStreamArray = 2;
constexpr std::uint64_t kStreamArc = 1000;
constexpr std::uint64_t kStreamRepeater = 3000;

std::string num(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

bool contains_angle(const std::vector<double> &set, double deg, bool azimuth)
{
    return std::any_of(set.begin(), set.end(), [&](double a) {
        const double d = azimuth ? wrap_deg(a - deg) : a - deg;
        return std::abs(d) < 1e-9;
    });
}

std::vector<MeasurementRecord> measure(const Padp &padp, const ScanSchedule &schedule, const AntennaPattern &txp,
                                       const AntennaPattern &rxp, SounderConfig cfg, double tx_power_dbm,
                                       std::uint64_t master_seed, std::uint64_t stream, int jobs)
{
    cfg.tx_power_dbm = tx_power_dbm;
    std::vector<MeasurementRecord> records(schedule.size());
    parallel_for(schedule.size(), jobs, [&](std::size_t i) {
        const ScanStep &st = schedule.steps[i];
        const double extra = -scan_loss_db(txp, st.tx_offset) - scan_loss_db(rxp, st.rx_offset);
        Cir cir = synthesize_measurement(padp, st.tx, st.rx, txp, rxp, cfg, derive_seed(master_seed, stream, i), extra);
        records[i] = make_record(std::move(cir), static_cast<int>(i), tx_power_dbm, txp.boresight_gain_dbi,
                                 rxp.boresight_gain_dbi);
    });
    return records;
}

double max_total_power(const std::vector<MeasurementRecord> &records)
{
    double best = -std::numeric_limits<double>::infinity();
    for (const auto &r : records)
        best = std::max(best, r.total_rx_power_dbm);
    return best;
}

struct ScheduleInfo
{
    std::size_t steps = 0;
    double time_s = 0.0;
    double reposition_s = 0.0;
};

HallSide hall_side(const std::string &antenna, const std::vector<MeasurementRecord> &records,
                   const ScheduleInfo &info, const HallSettings &hall, const AntennaPattern &txp,
                   const AntennaPattern &rxp, double tx_power_dbm, const ExtractionConfig &extraction)
{
    HallSide side;
    side.antenna = antenna;
    side.steps = info.steps;
    side.measurement_time_s = info.time_s;
    side.reposition_time_s = info.reposition_s;
    side.heatmap = path_gain_heatmap(records, hall.horn_tx_az, hall.horn_rx_az, 0.0, 0.0);
    for (double te : hall.elevations)
        for (double re : hall.elevations)
        {
            const auto cells = path_gain_heatmap(records, hall.horn_tx_az, hall.horn_rx_az, te, re);
            std::vector<double> gains;
            gains.reserve(cells.size());
            for (const auto &c : cells)
                gains.push_back(c.path_gain_db);
            side.cdfs.push_back({te, re, path_gain_cdf(std::move(gains))});
        }
    side.mpcs = extract_mpcs(records, txp, rxp, extraction, tx_power_dbm).mpcs;
    return side;
}

Scene scene_with_rx(const Scene &base, const Point3 &rx)
{
    Scene s = base;
    s.rx_pos = rx;
    return s;
}

std::string distance_label(double d)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(3);
    os << d;
    return os.str();
}
} // namespace

std::string_view to_string(ScenarioKind kind)
{
    switch (kind)
    {
    case ScenarioKind::HallComparison:
        return "hall_comparison";
    case ScenarioKind::ReflectorArc:
        return "reflector_arc";
    case ScenarioKind::RepeaterHallway:
        return "repeater_hallway";
    }
    return "unknown";
}

ScenarioKind scenario_kind_from_string(std::string_view name)
{
    for (auto k : {ScenarioKind::HallComparison, ScenarioKind::ReflectorArc, ScenarioKind::RepeaterHallway})
        if (to_string(k) == name)
            return k;
    throw ConfigError("unknown scenario kind '" + std::string(name) + "'");
}

void validate(const ScenarioConfig &c)
{
    if (c.version != kScenarioVersion)
        throw ConfigError("unsupported scenario version " + std::to_string(c.version));
    validate(c.scene);
    validate(c.sounder);
    validate(c.extraction);
    validate(c.timing);
    for (const auto &o : c.outputs)
        if (o != "csv" && o != "json" && o != "svg")
            throw ConfigError("unknown output format '" + o + "'");

    switch (c.kind)
    {
    case ScenarioKind::HallComparison: {
        if (!c.hall)
            throw ConfigError("hall_comparison scenario needs a 'hall' section");
        const auto &h = *c.hall;
        for (const auto *p : {&h.horn, &h.array_tx, &h.array_rx})
            validate(*p);
        if (!contains_angle(h.elevations, 0.0, false))
            throw ConfigError("hall elevations must include 0 deg");
        // Probe the array schedule for steer-limit violations before anything runs.
        phased_array_schedule(h.tx_gimbal_az, h.rx_gimbal_az, h.electronic_az, h.elevations, h.array_tx, h.array_rx,
                              c.timing);
        horn_schedule(h.horn_tx_az, h.elevations, h.horn_rx_az, h.elevations, c.timing);
        std::vector<double> tx_union, rx_union;
        for (double g : h.tx_gimbal_az)
            for (double e : h.electronic_az)
                tx_union.push_back(wrap_deg(g + e));
        for (double g : h.rx_gimbal_az)
            for (double e : h.electronic_az)
                rx_union.push_back(wrap_deg(g + e));
        for (double a : h.horn_tx_az)
            if (!contains_angle(tx_union, a, true))
                throw ConfigError("horn TX azimuth " + num(a) + " is not covered by the phased-array schedule");
        for (double a : h.horn_rx_az)
            if (!contains_angle(rx_union, a, true))
                throw ConfigError("horn RX azimuth " + num(a) + " is not covered by the phased-array schedule");
        break;
    }
    case ScenarioKind::ReflectorArc: {
        if (!c.arc)
            throw ConfigError("reflector_arc scenario needs an 'arc' section");
        const auto &a = *c.arc;
        validate(a.tx_pattern);
        validate(a.rx_pattern);
        validate(a.specular);
        validate(a.anomalous);
        if (a.specular.kind != ReflectorKind::Specular || a.anomalous.kind != ReflectorKind::Anomalous)
            throw ConfigError("arc.specular and arc.anomalous must have the matching reflector kinds");
        if (a.count < 1)
            throw ConfigError("arc.count must be >= 1");
        if (a.design_label < a.first_label || a.design_label >= a.first_label + a.count)
            throw ConfigError("arc.design_label is not one of the arc points");
        if (a.window_bins < 0)
            throw ConfigError("arc.window_bins must be >= 0");
        if (!(a.radius_m > 0.0))
            throw ConfigError("arc.radius_m must be positive");
        alignment_scan(a.tx_span_deg, a.tx_step_deg, a.rx_span_deg, a.rx_step_deg, {}, {}, c.timing);
        break;
    }
    case ScenarioKind::RepeaterHallway: {
        if (!c.repeater)
            throw ConfigError("repeater_hallway scenario needs a 'repeater' section");
        if (!c.scene.repeater)
            throw ConfigError("repeater_hallway scenario needs scene.repeater");
        const auto &r = *c.repeater;
        validate(r.tx_pattern);
        validate(r.rx_pattern);
        if (r.rx_positions.empty())
            throw ConfigError("repeater.rx_positions is empty");
        if (r.calibration_index < 0 || static_cast<std::size_t>(r.calibration_index) >= r.rx_positions.size())
            throw ConfigError("repeater.calibration_index is out of range");
        sweep_angles(r.az_start_deg, r.az_span_deg, r.az_step_deg);
        const Point3 &rep = c.scene.repeater->position;
        if (segment_blocked(c.scene.tx_pos, rep, c.scene.surfaces))
            throw ConfigError("repeater has no line of sight to the transmitter");
        for (const auto &p : r.rx_positions)
        {
            if (!segment_blocked(c.scene.tx_pos, p, c.scene.surfaces))
                throw ConfigError("RX position (" + num(p.x) + ", " + num(p.y) + ", " + num(p.z) +
                                  ") has line of sight to the transmitter");
            if (segment_blocked(rep, p, c.scene.surfaces))
                throw ConfigError("repeater has no line of sight to RX position (" + num(p.x) + ", " + num(p.y) +
                                  ", " + num(p.z) + ")");
        }
        break;
    }
    }
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)> &fn)
{
    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    if (workers == 1 || n < 2)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;)
        {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w)
        pool.emplace_back(work);
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

Orientation orientation_towards(const Point3 &from, const Point3 &to)
{
    const Vec3 d = to - from;
    if (norm(d) <= 0.0)
        throw SceneError("cannot aim at a coincident point");
    return {azimuth_deg(d), elevation_deg(d)};
}

std::vector<Point3> arc_points(const ArcSettings &arc)
{
    return arc_positions(arc.arc_center, arc.radius_m, arc.start_az_deg, arc.step_deg, arc.count);
}

std::string arc_label(const ArcSettings &arc, int index) { return "c" + std::to_string(arc.first_label + index); }

double reflector_path_length_m(const Scene &scene, const Point3 &reflector_center)
{
    return norm(reflector_center - scene.tx_pos) + norm(scene.rx_pos - reflector_center);
}

RecordSet hall_records(const ScenarioConfig &config, bool phased_array, int jobs)
{
    if (config.kind != ScenarioKind::HallComparison || !config.hall)
        throw ConfigError("hall records need a hall_comparison scenario");
    validate(config);
    const HallSettings &h = *config.hall;
    const Padp padp = enumerate_paths(config.scene);
    RecordSet set;
    set.extraction = config.extraction;
    if (phased_array)
    {
        const ScanSchedule array = phased_array_schedule(h.tx_gimbal_az, h.rx_gimbal_az, h.electronic_az,
                                                         h.elevations, h.array_tx, h.array_rx, config.timing);
        set.tx_pattern = h.array_tx;
        set.rx_pattern = h.array_rx;
        set.tx_power_dbm = h.array_tx_power_dbm;
        set.records = measure(padp, array, h.array_tx, h.array_rx, config.sounder, h.array_tx_power_dbm,
                              config.master_seed, kStreamArray, jobs);
    }
    else
    {
        const ScanSchedule horn = horn_schedule(h.horn_tx_az, h.elevations, h.horn_rx_az, h.elevations, config.timing);
        set.tx_pattern = h.horn;
        set.rx_pattern = h.horn;
        set.tx_power_dbm = h.horn_tx_power_dbm;
        set.records = measure(padp, horn, h.horn, h.horn, config.sounder, h.horn_tx_power_dbm, config.master_seed,
                              kStreamHorn, jobs);
    }
    return set;
}

HallReport run_hall_comparison(const ScenarioConfig &config, int jobs)
{
    if (config.kind != ScenarioKind::HallComparison || !config.hall)
        throw ConfigError("run_hall_comparison needs a hall_comparison scenario");
    validate(config);
    const HallSettings &h = *config.hall;
    const ScanSchedule horn = horn_schedule(h.horn_tx_az, h.elevations, h.horn_rx_az, h.elevations, config.timing);
    const ScanSchedule array = phased_array_schedule(h.tx_gimbal_az, h.rx_gimbal_az, h.electronic_az, h.elevations,
                                                     h.array_tx, h.array_rx, config.timing);
    const RecordSet horn_set = hall_records(config, false, jobs);
    const RecordSet array_set = hall_records(config, true, jobs);

    HallReport report;
    report.horn = hall_side("horn", horn_set.records,
                            {horn.size(), total_time(horn, config.timing), repositioning_time(horn, config.timing)},
                            h, h.horn, h.horn, h.horn_tx_power_dbm, config.extraction);
    report.array =
        hall_side("phased_array", array_set.records,
                  {array.size(), total_time(array, config.timing), repositioning_time(array, config.timing)}, h,
                  h.array_tx, h.array_rx, h.array_tx_power_dbm, config.extraction);

    double sq = 0.0;
    for (std::size_t i = 0; i < report.horn.heatmap.size(); ++i)
    {
        const double d = report.horn.heatmap[i].path_gain_db - report.array.heatmap[i].path_gain_db;
        sq += d * d;
    }
    report.heatmap_rms_db = std::sqrt(sq / static_cast<double>(report.horn.heatmap.size()));
    for (std::size_t i = 0; i < report.horn.cdfs.size(); ++i)
        report.max_cdf_distance =
            std::max(report.max_cdf_distance, cdf_sup_distance(report.horn.cdfs[i].cdf, report.array.cdfs[i].cdf));
    return report;
}

CoverageReport run_reflector_arc(const ScenarioConfig &config, ReflectorKind kind, int jobs)
{
    if (config.kind != ScenarioKind::ReflectorArc || !config.arc)
        throw ConfigError("run_reflector_arc needs a reflector_arc scenario");
    validate(config);
    const ArcSettings &a = *config.arc;
    const ReflectorSpec &spec = kind == ReflectorKind::Specular ? a.specular : a.anomalous;

    Scene base = config.scene;
    base.reflector = spec;
    const Orientation tx_nominal = orientation_towards(base.tx_pos, spec.center);
    const auto points = arc_points(a);
    const std::uint64_t stream_base = kStreamArc * (kind == ReflectorKind::Specular ? 1 : 2);

    CoverageReport report;
    report.variant = kind == ReflectorKind::Specular ? "specular" : "anomalous";
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        const Scene scene = scene_with_rx(base, points[i]);
        const Padp padp = enumerate_paths(scene);
        const ScanSchedule schedule =
            alignment_scan(a.tx_span_deg, a.tx_step_deg, a.rx_span_deg, a.rx_step_deg, tx_nominal,
                           orientation_towards(points[i], spec.center), config.timing);
        const auto records = measure(padp, schedule, a.tx_pattern, a.rx_pattern, config.sounder,
                                     config.sounder.tx_power_dbm, config.master_seed, stream_base + i, jobs);

        const double delay = reflector_path_length_m(scene, spec.center) / kSpeedOfLight;
        const ReflectorVsTotal rvt = reflector_vs_total(records, delay, a.window_bins);

        double strongest = -1.0;
        std::size_t strongest_bin = 0;
        for (const auto &r : records)
            for (std::size_t b = 0; b < r.cir.taps.size(); ++b)
                if (std::norm(r.cir.taps[b]) > strongest)
                {
                    strongest = std::norm(r.cir.taps[b]);
                    strongest_bin = b;
                }

        CoveragePoint p;
        p.label = arc_label(a, static_cast<int>(i));
        p.reflector_power_dbm = rvt.reflector_power_dbm;
        p.total_power_dbm = rvt.total_power_dbm;
        p.strongest_delay_s = static_cast<double>(strongest_bin) * config.sounder.bin_width_s();
        report.points.push_back(p);
        if (a.first_label + static_cast<int>(i) == a.design_label)
            report.reflector_delay_s = delay;
    }
    return report;
}

CoverageReport run_repeater_hallway(const ScenarioConfig &config, int jobs)
{
    if (config.kind != ScenarioKind::RepeaterHallway || !config.repeater)
        throw ConfigError("run_repeater_hallway needs a repeater_hallway scenario");
    validate(config);
    const RepeaterSettings &r = *config.repeater;
    const auto az = sweep_angles(r.az_start_deg, r.az_span_deg, r.az_step_deg);
    const ScanSchedule schedule = horn_schedule(az, {r.el_deg}, az, {r.el_deg}, config.timing);
    const double p_tx = config.sounder.tx_power_dbm;

    auto max_power = [&](std::size_t k, bool on, double gain_db) {
        Scene scene = scene_with_rx(config.scene, r.rx_positions[k]);
        // A repeater switched off in the scenario stays off in the ON runs too.
        scene.repeater->enabled = on && config.scene.repeater->enabled;
        scene.repeater->gain_db = gain_db;
        const Padp padp = enumerate_paths(scene);
        const auto records = measure(padp, schedule, r.tx_pattern, r.rx_pattern, config.sounder, p_tx,
                                     config.master_seed, kStreamRepeater + 2 * k + (on ? 1 : 0), jobs);
        return max_total_power(records);
    };

    std::vector<double> off(r.rx_positions.size());
    for (std::size_t k = 0; k < off.size(); ++k)
        off[k] = max_power(k, false, config.scene.repeater->gain_db);

    double gain = config.scene.repeater->gain_db;
    if (r.calibration_target_db)
    {
        // ON power is monotone in the repeater gain; bisect until the calibration row matches.
        const auto k = static_cast<std::size_t>(r.calibration_index);
        auto err = [&](double g) { return max_power(k, true, g) - off[k] - *r.calibration_target_db; };
        double lo = -100.0, hi = 200.0;
        if (err(lo) > 0.0 || err(hi) < 0.0)
            throw ConfigError("repeater calibration target is not reachable");
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            (err(mid) < 0.0 ? lo : hi) = mid;
        }
        gain = 0.5 * (lo + hi);
    }

    CoverageReport report;
    report.variant = "repeater";
    report.repeater_gain_db = gain;
    for (std::size_t k = 0; k < r.rx_positions.size(); ++k)
    {
        CoveragePoint p;
        p.distance_m = norm(r.rx_positions[k] - config.scene.repeater->position);
        p.label = distance_label(p.distance_m);
        p.max_power_off_dbm = off[k];
        p.max_power_on_dbm = max_power(k, true, gain);
        p.gain_db = p.max_power_on_dbm - p.max_power_off_dbm;
        report.points.push_back(p);
    }
    return report;
}

ScenarioResult run_scenario(const ScenarioConfig &config, int jobs)
{
    ScenarioResult result;
    result.name = config.name;
    result.kind = config.kind;
    result.master_seed = config.master_seed;
    switch (config.kind)
    {
    case ScenarioKind::HallComparison:
        result.hall = run_hall_comparison(config, jobs);
        break;
    case ScenarioKind::ReflectorArc:
        result.coverage.push_back(run_reflector_arc(config, ReflectorKind::Anomalous, jobs));
        result.coverage.push_back(run_reflector_arc(config, ReflectorKind::Specular, jobs));
        break;
    case ScenarioKind::RepeaterHallway:
        result.coverage.push_back(run_repeater_hallway(config, jobs));
        break;
    }
    return result;
}

std::string coverage_csv(const CoverageReport &report)
{
    std::string out;
    if (report.variant == "repeater")
    {
        out = "point,distance_m,max_power_on_dbm,max_power_off_dbm,gain_db\n";
        for (const auto &p : report.points)
            out += p.label + ',' + num(p.distance_m) + ',' + num(p.max_power_on_dbm) + ',' +
                   num(p.max_power_off_dbm) + ',' + num(p.gain_db) + '\n';
        return out;
    }
    out = "point,reflector_power_dbm,total_power_dbm\n";
    for (const auto &p : report.points)
        out += p.label + ',' + num(p.reflector_power_dbm) + ',' + num(p.total_power_dbm) + '\n';
    return out;
}

std::string heatmap_csv(const std::vector<HeatmapCell> &cells)
{
    std::string out = "tx_az,rx_az,path_gain_db\n";
    for (const auto &c : cells)
        out += num(c.tx_az_deg) + ',' + num(c.rx_az_deg) + ',' + num(c.path_gain_db) + '\n';
    return out;
}

std::string cdf_csv(const std::vector<ElevationCdf> &cdfs)
{
    std::string out = "tx_el,rx_el,value,prob\n";
    for (const auto &c : cdfs)
        for (const auto &p : c.cdf)
            out += num(c.tx_el_deg) + ',' + num(c.rx_el_deg) + ',' + num(p.value) + ',' + num(p.probability) + '\n';
    return out;
}

std::string mpc_csv(const std::vector<Mpc> &mpcs)
{
    std::string out = "gain,delay,aod_az,aod_el,aoa_az,aoa_el,phase,tag\n";
    for (const auto &m : mpcs)
        out += num(m.path_gain_db) + ',' + num(m.delay_s) + ',' + num(m.aod_az_deg) + ',' + num(m.aod_el_deg) + ',' +
               num(m.aoa_az_deg) + ',' + num(m.aoa_el_deg) + ',' + num(m.phase_rad) + ',' +
               std::string(to_string(m.tag)) + '\n';
    return out;
}

std::string timing_csv(const HallReport &hall)
{
    std::string out = "antenna,steps,measurement_time_s,reposition_time_s\n";
    for (const auto *s : {&hall.horn, &hall.array})
        out += s->antenna + ',' + std::to_string(s->steps) + ',' + num(s->measurement_time_s) + ',' +
               num(s->reposition_time_s) + '\n';
    return out;
}

std::vector<std::filesystem::path> emit(const ScenarioResult &result, const std::string &format,
                                        const std::filesystem::path &dir)
{
    if (format != "csv" && format != "json" && format != "svg")
        throw ConfigError("unknown output format '" + format + "'");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("cannot create output directory '" + dir.string() + "'");

    const std::string stem = result.name.empty() ? std::string(to_string(result.kind)) : result.name;
    std::vector<std::filesystem::path> written;
    auto put = [&](const std::string &suffix, const std::string &text) {
        const auto path = dir / (stem + suffix);
        write_text_file(path, text);
        written.push_back(path);
    };

    if (format == "json")
    {
        put("_report.json", dump(to_json(result)));
        return written;
    }

    if (result.hall)
    {
        const HallReport &h = *result.hall;
        for (const auto *s : {&h.horn, &h.array})
        {
            if (format == "csv")
            {
                put("_heatmap_" + s->antenna + ".csv", heatmap_csv(s->heatmap));
                put("_cdf_" + s->antenna + ".csv", cdf_csv(s->cdfs));
                put("_mpcs_" + s->antenna + ".csv", mpc_csv(s->mpcs));
            }
            else
            {
                put("_heatmap_" + s->antenna + ".svg", svg_heatmap(s->heatmap, "Path gain (dB), " + s->antenna));
                std::vector<SvgSeries> series;
                for (const auto &c : s->cdfs)
                {
                    SvgSeries line;
                    line.name = "TX " + num(c.tx_el_deg) + " / RX " + num(c.rx_el_deg);
                    for (const auto &p : c.cdf)
                        line.points.emplace_back(p.value, p.probability);
                    series.push_back(std::move(line));
                }
                put("_cdf_" + s->antenna + ".svg",
                    svg_lines(series, "Path gain CDF, " + s->antenna, "path gain (dB)", "probability", true));
            }
        }
        if (format == "csv")
            put("_timing.csv", timing_csv(h));
    }

    for (const auto &c : result.coverage)
    {
        if (format == "csv")
        {
            put("_" + c.variant + ".csv", coverage_csv(c));
            continue;
        }
        std::vector<SvgSeries> series(2);
        std::vector<std::string> labels;
        for (const auto &p : c.points)
            labels.push_back(p.label);
        for (std::size_t i = 0; i < c.points.size(); ++i)
        {
            const auto &p = c.points[i];
            const double x = static_cast<double>(i);
            if (c.variant == "repeater")
            {
                series[0].points.emplace_back(x, p.max_power_on_dbm);
                series[1].points.emplace_back(x, p.max_power_off_dbm);
            }
            else
            {
                series[0].points.emplace_back(x, p.reflector_power_dbm);
                series[1].points.emplace_back(x, p.total_power_dbm);
            }
        }
        series[0].name = c.variant == "repeater" ? "repeater on" : "reflector power";
        series[1].name = c.variant == "repeater" ? "repeater off" : "total power";
        put("_" + c.variant + ".svg", svg_lines(series, "Received power, " + c.variant, "point", "power (dBm)",
                                                  false, labels));
    }
    return written;
}

} // namespace mmsounder
