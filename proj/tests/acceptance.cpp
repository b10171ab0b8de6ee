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


// Acceptance run. One PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support.hpp"

#include "mmsounder/serialize.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

using namespace mmsounder;
namespace fs = std::filesystem;

namespace
{
struct Verdict
{
    bool pass = true;
    std::string note;

    void require(bool ok, const std::string &what)
    {
        if (!ok)
        {
            pass = false;
            note += (note.empty() ? "" : "; ") + what;
        }
    }
};

std::string fmt(const char *f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

ScenarioConfig load(const std::string &name)
{
    return load_scenario(mmtest::source_path("scenarios/" + name + ".json"));
}

const CoveragePoint *point(const CoverageReport &c, const std::string &label)
{
    for (const auto &p : c.points)
        if (p.label == label)
            return &p;
    return nullptr;
}

const CoverageReport *variant(const ScenarioResult &r, const std::string &name)
{
    for (const auto &c : r.coverage)
        if (c.variant == name)
            return &c;
    return nullptr;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Verdict counting()
{
    Verdict v;
    const TimingModel t;
    const ScanSchedule horn = mmtest::hall_horn_schedule();
    v.require(horn.size() == 2601, "horn steps " + std::to_string(horn.size()));
    v.require(total_time(horn, t) == 2601.0, "horn time " + fmt("%.3f", total_time(horn, t)));

    const ScenarioConfig hall = load("hall_comparison");
    const HallSettings &h = *hall.hall;
    const ScanSchedule one = phased_array_schedule({0.0}, {0.0}, h.electronic_az, h.elevations, h.array_tx, h.array_rx);
    const ScanSchedule all =
        phased_array_schedule(h.tx_gimbal_az, h.rx_gimbal_az, h.electronic_az, h.elevations, h.array_tx, h.array_rx);
    v.require(one.size() == 225, "array per gimbal pair " + std::to_string(one.size()));
    v.require(all.size() == 5625, "array steps " + std::to_string(all.size()));
    v.require(std::abs(total_time(all, t) - 84.375) < 1e-9, "array time " + fmt("%.6f", total_time(all, t)));

    v.require(alignment_scan(5.0, 1.0, 15.0, 1.0).size() == 341, "alignment steps");
    const auto az = sweep_angles(-180.0, 340.0, 20.0);
    v.require(az.size() == 18, "hallway sweep " + std::to_string(az.size()));
    v.require(horn_schedule(az, {0.0}, az, {0.0}).size() == 324, "hallway steps");
    v.note = v.pass ? "2601 / 225 / 5625 steps, 2601 s vs 84.375 s, 341, 18x18" : v.note;
    return v;
}

Verdict geometry()
{
    Verdict v;
    const ScenarioConfig cfg = load("indoor_arc");
    const double refl = reflector_path_length_m(cfg.scene, cfg.arc->anomalous.center);
    const double los = norm(cfg.scene.tx_pos - cfg.scene.rx_pos);
    Scene s = cfg.scene;
    s.reflector = cfg.arc->anomalous;
    double delay = -1.0;
    for (const auto &m : enumerate_paths(s).mpcs)
        if (m.tag == PathTag::PassiveReflector)
            delay = m.delay_s;
    const double bin = cfg.sounder.bin_width_s();
    const double binned = std::round(delay / bin) * bin;
    v.require(std::abs(refl - 8.36) < 0.005, "reflector path " + fmt("%.4f", refl));
    v.require(std::abs(los - 5.6) < 0.05, "LOS " + fmt("%.4f", los));
    v.require(delay > 0.0 && std::abs(binned - 27.88e-9) <= bin / 2.0, "binned delay " + fmt("%.3f ns", binned * 1e9));
    if (v.pass)
        v.note = "reflector " + fmt("%.3f m", refl) + ", binned delay " + fmt("%.3f ns", binned * 1e9) + ", LOS " +
                 fmt("%.3f m", los);
    return v;
}

Verdict zadoff_chu()
{
    Verdict v;
    const Waveform x = zc_sequence(2048, 1);
    double modulus_err = 0.0;
    for (const auto &s : x)
        modulus_err = std::max(modulus_err, std::abs(std::abs(s) - 1.0));
    const std::size_t n = x.size();
    double peak = 0.0, worst = 0.0;
    for (std::size_t lag = 0; lag < n; ++lag)
    {
        cdouble acc{};
        for (std::size_t i = 0; i < n; ++i)
            acc += x[(i + lag) % n] * std::conj(x[i]);
        (lag == 0 ? peak : worst) = std::max(lag == 0 ? peak : worst, std::abs(acc));
    }
    v.require(modulus_err < 1e-12, "modulus error " + fmt("%.2e", modulus_err));
    v.require(worst / peak < 1e-10, "sidelobe " + fmt("%.2e", worst / peak));
    if (v.pass)
        v.note = "max |x|-1 " + fmt("%.1e", modulus_err) + ", worst sidelobe " + fmt("%.1e", worst / peak);
    return v;
}

Verdict round_trip()
{
    Verdict v;
    int visible = 0, missed = 0, spurious = 0;
    for (std::uint64_t seed = 1000; seed < 1100; ++seed)
    {
        const auto run = mmtest::run_round_trip(seed);
        visible += run.outcome.visible;
        missed += run.outcome.missed;
        spurious += run.outcome.spurious;
        if (run.outcome.missed || run.outcome.spurious)
            v.require(false, "scene " + std::to_string(seed) + ": " + run.outcome.detail);
    }
    v.note = std::to_string(visible) + " visible paths, " + std::to_string(missed) + " missed, " +
             std::to_string(spurious) + " spurious" + (v.pass ? "" : " | " + v.note);
    return v;
}

Verdict hall()
{
    Verdict v;
    const ScenarioResult r = run_scenario(load("hall_comparison"), 4);
    const HallReport &h = *r.hall;
    v.require(h.heatmap_rms_db <= 3.0, "RMS " + fmt("%.3f dB", h.heatmap_rms_db));
    v.require(h.max_cdf_distance <= 0.1, "CDF distance " + fmt("%.3f", h.max_cdf_distance));
    for (const HallSide *side : {&h.horn, &h.array})
    {
        const ElevationCdf *zero = nullptr;
        for (const auto &c : side->cdfs)
            if (c.tx_el_deg == 0.0 && c.rx_el_deg == 0.0)
                zero = &c;
        v.require(zero != nullptr && side->cdfs.size() == 9, side->antenna + ": missing CDFs");
        if (!zero)
            continue;
        for (const auto &c : side->cdfs)
            if (&c != zero)
                v.require(stochastically_dominates(zero->cdf, c.cdf),
                          side->antenna + ": (0,0) does not dominate (" + fmt("%g", c.tx_el_deg) + "," +
                              fmt("%g", c.rx_el_deg) + ")");
    }
    if (v.pass)
        v.note = "heatmap RMS " + fmt("%.3f dB", h.heatmap_rms_db) + ", CDF sup-distance " +
                 fmt("%.3f", h.max_cdf_distance) + ", (0,0) dominates for both antennas";
    return v;
}

Verdict reflectors()
{
    Verdict v;
    const ScenarioConfig indoor_cfg = load("indoor_arc");
    const ScenarioResult indoor = run_scenario(indoor_cfg, 4);
    const CoverageReport *echo = variant(indoor, "anomalous");
    const CoverageReport *alu = variant(indoor, "specular");
    if (!echo || !alu)
    {
        v.require(false, "indoor variants missing");
        return v;
    }
    const std::string design = "c" + std::to_string(indoor_cfg.arc->design_label);
    const CoveragePoint *best = &echo->points.front();
    for (const auto &p : echo->points)
        if (p.reflector_power_dbm > best->reflector_power_dbm)
            best = &p;
    v.require(best->label == design, "ECHO peaks at " + best->label);

    double delta = 0.0;
    int n = 0;
    for (int c = 1; c <= 5; ++c)
    {
        const auto *e = point(*echo, "c" + std::to_string(c));
        const auto *a = point(*alu, "c" + std::to_string(c));
        if (e && a)
        {
            delta += e->reflector_power_dbm - a->reflector_power_dbm;
            ++n;
        }
    }
    delta = n ? delta / n : 0.0;
    v.require(n == 5 && std::abs(delta - 15.0) <= 5.0, "pre-c6 delta " + fmt("%.2f dB", delta));

    const auto *e5 = point(*echo, design), *a5 = point(*alu, design);
    v.require(a5 && a5->total_power_dbm - a5->reflector_power_dbm > 1.0, "aluminum dominates total at " + design);
    v.require(e5 && e5->total_power_dbm - e5->reflector_power_dbm <= 1.0, "ECHO not within 1 dB at " + design);

    const ScenarioConfig outdoor_cfg = load("outdoor_arc");
    const ScenarioResult outdoor = run_scenario(outdoor_cfg, 4);
    const std::string odesign = "c" + std::to_string(outdoor_cfg.arc->design_label);
    const CoverageReport *oe = variant(outdoor, "anomalous"), *oa = variant(outdoor, "specular");
    const CoveragePoint *oe0 = oe ? point(*oe, odesign) : nullptr, *oa0 = oa ? point(*oa, odesign) : nullptr;
    v.require(oe0 && oa0 && oe0->total_power_dbm > oa0->total_power_dbm, "outdoor ECHO total not above aluminum");

    if (v.pass)
        v.note = "ECHO argmax " + best->label + ", mean delta c1..c5 " + fmt("%.2f dB", delta) + ", " + design +
                 " total-reflector ECHO " + fmt("%.2f", e5->total_power_dbm - e5->reflector_power_dbm) + " / Al " +
                 fmt("%.2f dB", a5->total_power_dbm - a5->reflector_power_dbm) + ", outdoor " + odesign + " " +
                 fmt("%.2f", oe0->total_power_dbm) + " vs " + fmt("%.2f dBm", oa0->total_power_dbm);
    return v;
}

Verdict repeater()
{
    Verdict v;
    const ScenarioResult r = run_scenario(load("repeater_hallway"), 4);
    if (r.coverage.size() != 1 || r.coverage[0].points.size() != 4)
    {
        v.require(false, "expected four repeater points");
        return v;
    }
    const auto &pts = r.coverage[0].points;
    const double target[] = {39.82, 21.24, 17.26, 18.86};
    v.require(std::abs(pts[0].gain_db - target[0]) < 0.01, "calibration " + fmt("%.2f dB", pts[0].gain_db));
    for (int i = 1; i < 4; ++i)
        v.require(std::abs(pts[i].gain_db - target[i]) <= 6.0,
                  fmt("%.1f m", pts[i].distance_m) + " gain " + fmt("%.2f dB", pts[i].gain_db));
    v.require(pts[0].gain_db > pts[1].gain_db, "gain(1 m) <= gain(2 m)");
    for (const auto &p : pts)
        v.require(std::abs(p.gain_db - (p.max_power_on_dbm - p.max_power_off_dbm)) < 1e-9, "gain != on - off");
    if (v.pass)
        v.note = "gains " + fmt("%.2f", pts[0].gain_db) + " / " + fmt("%.2f", pts[1].gain_db) + " / " +
                 fmt("%.2f", pts[2].gain_db) + " / " + fmt("%.2f dB", pts[3].gain_db);
    return v;
}

Verdict determinism()
{
    Verdict v;
    const fs::path root = fs::temp_directory_path() / "mmsounder_acceptance";
    fs::remove_all(root);
    std::size_t files = 0;
    for (const char *name : {"hall_comparison", "indoor_arc", "outdoor_arc", "repeater_hallway"})
    {
        const ScenarioConfig cfg = load(name);
        const ScenarioResult serial = run_scenario(cfg, 1), threaded = run_scenario(cfg, 4);
        for (const char *format : {"csv", "json", "svg"})
        {
            const auto a = emit(serial, format, root / "serial");
            const auto b = emit(threaded, format, root / "threaded");
            v.require(a.size() == b.size(), std::string(name) + ": file count differs");
            for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i, ++files)
                v.require(a[i].filename() == b[i].filename() && slurp(a[i]) == slurp(b[i]),
                          a[i].filename().string() + " differs");
        }
    }
    fs::remove_all(root);
    if (v.pass)
        v.note = std::to_string(files) + " files identical between 1 and 4 workers";
    return v;
}
} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"1 counting and timing", counting},
        {"2 indoor arc geometry", geometry},
        {"3 Zadoff-Chu properties", zadoff_chu},
        {"4 sounding round trip", round_trip},
        {"5 horn vs phased array", hall},
        {"6 reflector behaviour", reflectors},
        {"7 repeater behaviour", repeater},
        {"8 determinism", determinism},
    };
    int failed = 0;
    for (const auto &[name, fn] : criteria)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try
        {
            v = fn();
        }
        catch (const std::exception &e)
        {
            v.pass = false;
            v.note = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %s (%.1f s): %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), secs, v.note.c_str());
        std::fflush(stdout);
        failed += v.pass ? 0 : 1;
    }
    return failed ? 1 : 0;
}
