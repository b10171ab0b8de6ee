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

#include "mmsounder/antenna.hpp"
#include "mmsounder/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace mmsounder
{

void validate(const AntennaPattern &p)
{
    if (!std::isfinite(p.boresight_gain_dbi))
        throw ConfigError("antenna boresight gain must be finite");
    if (!(p.beamwidth_az_deg > 0.0) || !(p.beamwidth_el_deg > 0.0))
        throw ConfigError("antenna beamwidths must be positive");
    if (!(p.sidelobe_floor_db > 0.0))
        throw ConfigError("antenna sidelobe floor must be positive");
    if (!(p.steer_limit_az_deg >= 0.0) || !(p.steer_limit_el_deg >= 0.0))
        throw ConfigError("antenna steering limits must be non-negative");
}

double gain_db(const AntennaPattern &p, const Orientation &pointing, const Orientation &arrival)
{
    const double daz = wrap_deg(pointing.az_deg - arrival.az_deg) / p.beamwidth_az_deg;
    const double del = (pointing.el_deg - arrival.el_deg) / p.beamwidth_el_deg;
    const double loss = 12.0 * (daz * daz + del * del);
    return p.boresight_gain_dbi - std::min(loss, p.sidelobe_floor_db);
}

bool steerable(const AntennaPattern &p, const Orientation &offset)
{
    // Tiny slack so that grid values computed in floating point (e.g. 40.0000000001) pass.
    constexpr double slack = 1e-9;
    return std::abs(wrap_deg(offset.az_deg)) <= p.steer_limit_az_deg + slack &&
           std::abs(offset.el_deg) <= p.steer_limit_el_deg + slack;
}

double scan_loss_db(const AntennaPattern &p, const Orientation &offset)
{
    if (!p.scan_loss)
        return 0.0;
    const double c = std::cos(deg2rad(wrap_deg(offset.az_deg))) * std::cos(deg2rad(offset.el_deg));
    if (c <= 0.0)
        return p.sidelobe_floor_db;
    return std::min(-10.0 * std::log10(c), p.sidelobe_floor_db);
}

double beamwidth_from_gain_deg(double gain_dbi)
{
    return std::sqrt(41253.0 / std::pow(10.0, gain_dbi / 10.0));
}

AntennaPattern horn_antenna()
{
    AntennaPattern p;
    p.boresight_gain_dbi = 17.0;
    p.beamwidth_az_deg = 24.0;
    p.beamwidth_el_deg = 26.0;
    return p;
}

static AntennaPattern phased_array(double gain_dbi)
{
    AntennaPattern p;
    p.boresight_gain_dbi = gain_dbi;
    p.beamwidth_az_deg = beamwidth_from_gain_deg(gain_dbi);
    p.beamwidth_el_deg = p.beamwidth_az_deg;
    p.steer_limit_az_deg = 40.0;
    p.steer_limit_el_deg = 20.0;
    return p;
}

AntennaPattern phased_array_tx() { return phased_array(39.0); }
AntennaPattern phased_array_rx() { return phased_array(21.5); }

} // namespace mmsounder
