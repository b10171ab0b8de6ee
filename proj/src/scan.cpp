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

#include "mmsounder/scan.hpp"
#include "mmsounder/geometry.hpp"

#include <cmath>
#include <sstream>

namespace mmsounder
{

namespace
{
void check_set(const std::vector<double> &set, const char *name, bool azimuth)
{
    if (set.empty())
        throw ConfigError(std::string("angle set '") + name + "' is empty");
    for (std::size_t i = 0; i < set.size(); ++i)
    {
        if (!std::isfinite(set[i]))
            throw ConfigError(std::string("angle set '") + name + "' has a non-finite value");
        for (std::size_t j = i + 1; j < set.size(); ++j)
        {
            const double d = azimuth ? wrap_deg(set[i] - set[j]) : set[i] - set[j];
            if (std::abs(d) < 1e-9)
                throw ConfigError(std::string("angle set '") + name + "' contains duplicate angles");
        }
    }
}

Orientation absolute(double az, double el) { return {wrap_deg(az), el}; }
} // namespace

void validate(const TimingModel &t)
{
    if (!(t.horn_step_s > 0.0) || !(t.array_switch_s > 0.0) || !(t.gimbal_reposition_s > 0.0))
        throw ConfigError("timing model values must be positive");
}

std::vector<double> sweep_angles(double start_deg, double span_deg, double step_deg)
{
    if (!(span_deg >= 0.0))
        throw ConfigError("sweep span must be >= 0");
    if (span_deg == 0.0)
        return {start_deg};
    if (!(step_deg > 0.0))
        throw ConfigError("sweep step must be positive");
    const auto n = static_cast<long>(std::floor(span_deg / step_deg + 1e-9));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i)
        out.push_back(start_deg + static_cast<double>(i) * step_deg);
    return out;
}

ScanSchedule horn_schedule(const std::vector<double> &tx_az, const std::vector<double> &tx_el,
                           const std::vector<double> &rx_az, const std::vector<double> &rx_el,
                           const TimingModel &timing)
{
    check_set(tx_az, "tx_az", true);
    check_set(tx_el, "tx_el", false);
    check_set(rx_az, "rx_az", true);
    check_set(rx_el, "rx_el", false);

    ScanSchedule s;
    s.mode = ScanMode::HornGimbal;
    s.steps.reserve(tx_az.size() * tx_el.size() * rx_az.size() * rx_el.size());
    for (double te : tx_el)
        for (double ta : tx_az)
            for (double re : rx_el)
                for (double ra : rx_az)
                {
                    ScanStep st;
                    st.tx = absolute(ta, te);
                    st.rx = absolute(ra, re);
                    st.dwell_s = timing.horn_step_s;
                    s.steps.push_back(st);
                }
    return s;
}

ScanSchedule phased_array_schedule(const std::vector<double> &tx_gimbal_az, const std::vector<double> &rx_gimbal_az,
                                   const std::vector<double> &electronic_az, const std::vector<double> &el,
                                   const AntennaPattern &tx_pattern, const AntennaPattern &rx_pattern,
                                   const TimingModel &timing)
{
    check_set(tx_gimbal_az, "tx_gimbal_az", true);
    check_set(rx_gimbal_az, "rx_gimbal_az", true);
    check_set(electronic_az, "electronic_az", true);
    check_set(el, "el", false);
    for (double a : electronic_az)
        for (double e : el)
        {
            const Orientation off{a, e};
            if (!steerable(tx_pattern, off) || !steerable(rx_pattern, off))
            {
                std::ostringstream msg;
                msg << "electronic offset (" << a << ", " << e << ") deg is outside the steering limits";
                throw ConfigError(msg.str());
            }
        }

    ScanSchedule s;
    s.mode = ScanMode::PhasedArrayHybrid;
    for (double g : tx_gimbal_az)
        s.tx_gimbals.push_back(absolute(g, 0.0));
    for (double g : rx_gimbal_az)
        s.rx_gimbals.push_back(absolute(g, 0.0));

    for (std::size_t tg = 0; tg < tx_gimbal_az.size(); ++tg)
        for (std::size_t rg = 0; rg < rx_gimbal_az.size(); ++rg)
            for (double te : el)
                for (double ta : electronic_az)
                    for (double re : el)
                        for (double ra : electronic_az)
                        {
                            ScanStep st;
                            st.tx_offset = {ta, te};
                            st.rx_offset = {ra, re};
                            st.tx = absolute(tx_gimbal_az[tg] + ta, te);
                            st.rx = absolute(rx_gimbal_az[rg] + ra, re);
                            st.dwell_s = timing.array_switch_s;
                            st.tx_gimbal = static_cast<int>(tg);
                            st.rx_gimbal = static_cast<int>(rg);
                            s.steps.push_back(st);
                        }
    return s;
}

ScanSchedule alignment_scan(double tx_span_deg, double tx_step_deg, double rx_span_deg, double rx_step_deg,
                            const Orientation &tx_nominal, const Orientation &rx_nominal, const TimingModel &timing)
{
    if (!(tx_span_deg >= 0.0) || !(rx_span_deg >= 0.0))
        throw ConfigError("alignment spans must be >= 0");
    const auto tx = sweep_angles(-tx_span_deg, 2.0 * tx_span_deg, tx_step_deg);
    const auto rx = sweep_angles(-rx_span_deg, 2.0 * rx_span_deg, rx_step_deg);
    ScanSchedule s;
    s.mode = ScanMode::HornGimbal;
    s.steps.reserve(tx.size() * rx.size());
    for (double t : tx)
        for (double r : rx)
        {
            ScanStep st;
            st.tx = absolute(tx_nominal.az_deg + t, tx_nominal.el_deg);
            st.rx = absolute(rx_nominal.az_deg + r, rx_nominal.el_deg);
            st.dwell_s = timing.horn_step_s;
            s.steps.push_back(st);
        }
    return s;
}

double total_time(const ScanSchedule &schedule, const TimingModel &timing)
{
    const auto m = static_cast<double>(schedule.steps.size());
    return schedule.mode == ScanMode::HornGimbal ? m * timing.horn_step_s : m * timing.array_switch_s;
}

int gimbal_repositions(const ScanSchedule &schedule)
{
    if (schedule.mode != ScanMode::PhasedArrayHybrid)
        return 0;
    int moves = 0;
    for (std::size_t i = 1; i < schedule.steps.size(); ++i)
    {
        const auto &a = schedule.steps[i - 1];
        const auto &b = schedule.steps[i];
        if (a.tx_gimbal != b.tx_gimbal || a.rx_gimbal != b.rx_gimbal)
            ++moves;
    }
    return moves;
}

double repositioning_time(const ScanSchedule &schedule, const TimingModel &timing)
{
    return gimbal_repositions(schedule) * timing.gimbal_reposition_s;
}

std::string schedule_csv(const ScanSchedule &schedule)
{
    std::ostringstream os;
    os.precision(10);
    os << "step_index,tx_az,tx_el,rx_az,rx_el,dwell_s\n";
    for (std::size_t i = 0; i < schedule.steps.size(); ++i)
    {
        const auto &s = schedule.steps[i];
        os << i << ',' << s.tx.az_deg << ',' << s.tx.el_deg << ',' << s.rx.az_deg << ',' << s.rx.el_deg << ','
           << s.dwell_s << '\n';
    }
    return os.str();
}

} // namespace mmsounder
