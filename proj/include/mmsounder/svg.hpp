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

#ifndef MMSOUNDER_SVG_HPP
#define MMSOUNDER_SVG_HPP

#include "mmsounder/analysis.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mmsounder
{

struct SvgSeries
{
    std::string name;
    std::vector<std::pair<double, double>> points;
};

// Static line plot. `steps` draws staircase segments (for CDFs); `x_labels` replaces the numeric
// x ticks with one label per integer x.
std::string svg_lines(const std::vector<SvgSeries> &series, const std::string &title, const std::string &x_label,
                      const std::string &y_label, bool steps, const std::vector<std::string> &x_labels = {});

// Grid of coloured cells, one per distinct (tx_az, rx_az).
std::string svg_heatmap(const std::vector<HeatmapCell> &cells, const std::string &title);

} // namespace mmsounder

#endif
