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

// Command-line front end: run scenarios, print scan schedules, extract MPCs from stored records
// and summarize report files.

#include "mmsounder/runner.hpp"
#include "mmsounder/serialize.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

using namespace mmsounder;

namespace
{
enum ExitCode
{
    kOk = 0,
    kConfig = 2,
    kIo = 3
};

std::vector<double> paper_azimuths_without(double skipped)
{
    std::vector<double> out;
    for (double a : sweep_angles(-180.0, 340.0, 20.0))
        if (std::abs(wrap_deg(a - skipped)) > 1e-9)
            out.push_back(a);
    return out;
}

int cmd_run(const std::string &scenario_path, std::optional<std::uint64_t> seed, const std::string &out_dir,
            int jobs, const std::vector<std::string> &formats)
{
    ScenarioConfig config = load_scenario(scenario_path);
    if (seed)
        config.master_seed = *seed;
    const ScenarioResult result = run_scenario(config, jobs);
    const auto &fmts = formats.empty() ? config.outputs : formats;
    for (const auto &f : fmts)
        for (const auto &path : emit(result, f, out_dir))
            std::cout << path.string() << '\n';

    if (result.hall)
    {
        const auto &h = *result.hall;
        std::printf("horn: %zu steps, %.3f s (%.2f min); phased array: %zu steps, %.3f s (%.2f min) + %.1f s gimbal\n",
                    h.horn.steps, h.horn.measurement_time_s, h.horn.measurement_time_s / 60.0, h.array.steps,
                    h.array.measurement_time_s, h.array.measurement_time_s / 60.0, h.array.reposition_time_s);
        std::printf("heatmap RMS difference %.3f dB, worst CDF distance %.3f\n", h.heatmap_rms_db, h.max_cdf_distance);
    }
    for (const auto &c : result.coverage)
        std::cout << c.variant << ":\n" << coverage_csv(c);
    return kOk;
}

int cmd_schedule(const std::string &mode, const std::string &out, double tx_span, double rx_span, double step)
{
    TimingModel timing;
    ScanSchedule s;
    if (mode == "horn")
        s = horn_schedule(paper_azimuths_without(0.0), {-20.0, 0.0, 20.0}, paper_azimuths_without(-180.0),
                          {-20.0, 0.0, 20.0}, timing);
    else if (mode == "array")
        s = phased_array_schedule({-160.0, -100.0, 0.0, 100.0, 160.0}, {-160.0, -100.0, 0.0, 100.0, 160.0},
                                  {-40.0, -20.0, 0.0, 20.0, 40.0}, {-20.0, 0.0, 20.0}, phased_array_tx(),
                                  phased_array_rx(), timing);
    else if (mode == "alignment")
        s = alignment_scan(tx_span, step, rx_span, step, {}, {}, timing);
    else if (mode == "hallway")
    {
        const auto az = sweep_angles(-180.0, 340.0, 20.0);
        s = horn_schedule(az, {0.0}, az, {0.0}, timing);
    }
    else
        throw ConfigError("unknown schedule mode '" + mode + "'");

    const std::string csv = schedule_csv(s);
    if (out.empty())
        std::cout << csv;
    else
        write_text_file(out, csv);
    std::fprintf(stderr, "steps=%zu time_s=%.6g reposition_s=%.6g\n", s.size(), total_time(s, timing),
                 repositioning_time(s, timing));
    return kOk;
}

int cmd_extract(const std::string &records_path, std::optional<double> margin, std::optional<double> floor)
{
    RecordSet set = record_set_from_json(read_json_file(records_path));
    if (margin)
        set.extraction.detection_margin_db = *margin;
    if (floor)
        set.extraction.noise_floor_dbm_per_tap = *floor;
    const RecoveredPadp padp = extract_mpcs(set.records, set.tx_pattern, set.rx_pattern, set.extraction,
                                            set.tx_power_dbm);
    std::cout << mpc_csv(padp.mpcs);
    std::fprintf(stderr, "mpcs=%zu residual_dbm=%.3f\n", padp.mpcs.size(), padp.residual_power_db);
    return kOk;
}

int cmd_report(const std::string &report_path)
{
    const Json j = read_json_file(report_path);
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("'" + report_path + "' is not a scenario report");
    std::cout << "scenario " << j.value("name", std::string()) << " (" << j["kind"].get<std::string>()
              << "), seed " << j.value("master_seed", 0ULL) << '\n';
    if (j.contains("hall"))
    {
        const Json &h = j["hall"];
        for (const char *side : {"horn", "array"})
        {
            const Json &s = h[side];
            std::printf("%-13s steps %6zu  time %10.3f s  gimbal %7.1f s  mpcs %zu\n",
                        s["antenna"].get<std::string>().c_str(), s["steps"].get<std::size_t>(),
                        s["measurement_time_s"].get<double>(), s["reposition_time_s"].get<double>(),
                        s["mpcs"].size());
        }
        std::printf("heatmap RMS difference %.3f dB, worst CDF distance %.3f\n", h["heatmap_rms_db"].get<double>(),
                    h["max_cdf_distance"].get<double>());
    }
    if (j.contains("coverage"))
        for (const Json &c : j["coverage"])
        {
            std::cout << c["variant"].get<std::string>() << '\n';
            for (const Json &p : c["points"])
            {
                std::cout << "  " << p["label"].get<std::string>();
                for (const auto &item : p.items())
                    if (item.key() == "strongest_delay_s")
                        std::printf("  strongest_delay_ns=%.3f", item.value().get<double>() * 1e9);
                    else if (item.key() != "label")
                        std::printf("  %s=%.3f", item.key().c_str(), item.value().get<double>());
                std::cout << '\n';
            }
        }
    return kOk;
}
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"mmsounder: directional mmWave channel sounder simulator"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "run a scenario and write its artifacts");
    std::string scenario_path, out_dir = "out";
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    std::vector<std::string> formats;
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--seed", seed, "override the master seed");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    run->add_option("--format", formats, "output formats (csv, json, svg); defaults to the scenario's list");

    auto *sched = app.add_subcommand("schedule", "print a scan schedule as CSV");
    std::string mode = "horn", sched_out;
    double tx_span = 5.0, rx_span = 15.0, step = 1.0;
    sched->add_option("--mode", mode, "horn | array | alignment | hallway");
    sched->add_option("--out", sched_out, "write the CSV here instead of stdout");
    sched->add_option("--tx-span", tx_span, "alignment TX half span (deg)");
    sched->add_option("--rx-span", rx_span, "alignment RX half span (deg)");
    sched->add_option("--step", step, "alignment step (deg)");

    auto *extract = app.add_subcommand("extract", "extract MPCs from a stored record set");
    std::string records_path;
    std::optional<double> margin, floor;
    extract->add_option("records", records_path, "record set JSON file")->required();
    extract->add_option("--margin", margin, "detection margin (dB)");
    extract->add_option("--noise-floor", floor, "noise floor per tap (dBm)");

    auto *records = app.add_subcommand("records", "store the raw hall records for later extraction");
    std::string rec_scenario, rec_out = "records.json";
    std::string antenna = "horn";
    records->add_option("scenario", rec_scenario, "hall_comparison scenario JSON file")->required();
    records->add_option("--antenna", antenna, "horn | array");
    records->add_option("--out", rec_out, "output file");
    records->add_option("--seed", seed, "override the master seed");
    records->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    auto *report = app.add_subcommand("report", "summarize a report JSON file");
    std::string report_path;
    report->add_option("report", report_path, "report JSON file")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try
    {
        if (*run)
            return cmd_run(scenario_path, seed, out_dir, jobs, formats);
        if (*sched)
            return cmd_schedule(mode, sched_out, tx_span, rx_span, step);
        if (*extract)
            return cmd_extract(records_path, margin, floor);
        if (*records)
        {
            ScenarioConfig config = load_scenario(rec_scenario);
            if (seed)
                config.master_seed = *seed;
            if (antenna != "horn" && antenna != "array")
                throw ConfigError("--antenna must be horn or array");
            write_text_file(rec_out, dump(to_json(hall_records(config, antenna == "array", jobs))));
            return kOk;
        }
        if (*report)
            return cmd_report(report_path);
    }
    catch (const IoError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    }
    catch (const ConfigError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    }
    catch (const nlohmann::json::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    }
    return kOk;
}
