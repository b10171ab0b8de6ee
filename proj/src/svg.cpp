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

#include "mmsounder/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace mmsounder
{

namespace
{
constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#7f7f7f", "#17becf"};

std::string f2(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string &s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::string header(const std::string &title)
{
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + f2(kWidth) + "\" height=\"" + f2(kHeight) +
           "\" font-family=\"sans-serif\" font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
           "<text x=\"" + f2(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + escape(title) +
           "</text>\n";
}

// Blue-to-yellow ramp on [0, 1].
std::string colour(double t)
{
    t = std::clamp(t, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(68 + t * (253 - 68)));
    const int g = static_cast<int>(std::lround(1 + t * (231 - 1)));
    const int b = static_cast<int>(std::lround(84 + t * (37 - 84)));
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}
} // namespace

std::string svg_lines(const std::vector<SvgSeries> &series, const std::string &title, const std::string &x_label,
                      const std::string &y_label, bool steps, const std::vector<std::string> &x_labels)
{
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto &s : series)
        for (const auto &[x, y] : s.points)
        {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    if (!std::isfinite(x0))
        x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    if (x1 - x0 < 1e-12)
        x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 < 1e-12)
        y0 -= 0.5, y1 += 0.5;

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * ph; };

    std::string out = header(title);
    out += "<rect x=\"" + f2(kLeft) + "\" y=\"" + f2(kTop) + "\" width=\"" + f2(pw) + "\" height=\"" + f2(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i)
    {
        const double y = y0 + (y1 - y0) * i / 4.0;
        out += "<text x=\"" + f2(kLeft - 6) + "\" y=\"" + f2(py(y) + 4) + "\" text-anchor=\"end\">" + f2(y) +
               "</text>\n";
    }
    if (!x_labels.empty())
    {
        for (std::size_t i = 0; i < x_labels.size(); ++i)
            out += "<text x=\"" + f2(px(static_cast<double>(i))) + "\" y=\"" + f2(kTop + ph + 16) +
                   "\" text-anchor=\"middle\">" + escape(x_labels[i]) + "</text>\n";
    }
    else
    {
        for (int i = 0; i <= 4; ++i)
        {
            const double x = x0 + (x1 - x0) * i / 4.0;
            out += "<text x=\"" + f2(px(x)) + "\" y=\"" + f2(kTop + ph + 16) + "\" text-anchor=\"middle\">" + f2(x) +
                   "</text>\n";
        }
    }
    out += "<text x=\"" + f2(kLeft + pw / 2) + "\" y=\"" + f2(kHeight - 12) + "\" text-anchor=\"middle\">" +
           escape(x_label) + "</text>\n";
    out += "<text x=\"16\" y=\"" + f2(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           f2(kTop + ph / 2) + ")\">" + escape(y_label) + "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k)
    {
        const auto &s = series[k];
        const char *c = kPalette[k % (sizeof kPalette / sizeof kPalette[0])];
        std::string pts;
        for (std::size_t i = 0; i < s.points.size(); ++i)
        {
            const auto &[x, y] = s.points[i];
            if (steps && i > 0)
                pts += f2(px(x)) + ',' + f2(py(s.points[i - 1].second)) + ' ';
            pts += f2(px(x)) + ',' + f2(py(y)) + ' ';
        }
        out += "<polyline fill=\"none\" stroke=\"" + std::string(c) + "\" stroke-width=\"1.5\" points=\"" + pts +
               "\"/>\n";
        const double ly = kTop + 14.0 * static_cast<double>(k) + 8.0;
        out += "<line x1=\"" + f2(kWidth - kRight + 10) + "\" y1=\"" + f2(ly) + "\" x2=\"" +
               f2(kWidth - kRight + 30) + "\" y2=\"" + f2(ly) + "\" stroke=\"" + c + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + f2(kWidth - kRight + 34) + "\" y=\"" + f2(ly + 4) + "\">" + escape(s.name) +
               "</text>\n";
    }
    return out + "</svg>\n";
}

std::string svg_heatmap(const std::vector<HeatmapCell> &cells, const std::string &title)
{
    std::map<double, int> tx, rx;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto &c : cells)
    {
        tx.emplace(c.tx_az_deg, 0);
        rx.emplace(c.rx_az_deg, 0);
        lo = std::min(lo, c.path_gain_db);
        hi = std::max(hi, c.path_gain_db);
    }
    int i = 0;
    for (auto &e : tx)
        e.second = i++;
    i = 0;
    for (auto &e : rx)
        e.second = i++;
    if (!(hi > lo))
        hi = lo + 1.0;

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    const double cw = pw / std::max<std::size_t>(1, rx.size()), ch = ph / std::max<std::size_t>(1, tx.size());
    std::string out = header(title);
    for (const auto &c : cells)
    {
        const double x = kLeft + cw * rx[c.rx_az_deg];
        const double y = kTop + ch * (static_cast<double>(tx.size()) - 1.0 - tx[c.tx_az_deg]);
        out += "<rect x=\"" + f2(x) + "\" y=\"" + f2(y) + "\" width=\"" + f2(cw) + "\" height=\"" + f2(ch) +
               "\" fill=\"" + colour((c.path_gain_db - lo) / (hi - lo)) + "\"/>\n";
    }
    for (const auto &[a, k] : rx)
        if (k % 2 == 0)
            out += "<text x=\"" + f2(kLeft + cw * (k + 0.5)) + "\" y=\"" + f2(kTop + ph + 14) +
                   "\" text-anchor=\"middle\">" + f2(a) + "</text>\n";
    for (const auto &[a, k] : tx)
        if (k % 2 == 0)
            out += "<text x=\"" + f2(kLeft - 6) + "\" y=\"" +
                   f2(kTop + ch * (static_cast<double>(tx.size()) - 0.5 - k) + 4) + "\" text-anchor=\"end\">" +
                   f2(a) + "</text>\n";
    out += "<text x=\"" + f2(kLeft + pw / 2) + "\" y=\"" + f2(kHeight - 12) +
           "\" text-anchor=\"middle\">RX azimuth (deg)</text>\n";
    out += "<text x=\"16\" y=\"" + f2(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           f2(kTop + ph / 2) + ")\">TX azimuth (deg)</text>\n";
    for (int s = 0; s <= 10; ++s)
    {
        const double t = s / 10.0;
        out += "<rect x=\"" + f2(kWidth - kRight + 20) + "\" y=\"" + f2(kTop + ph * (1.0 - t) - ph / 11.0) +
               "\" width=\"16\" height=\"" + f2(ph / 11.0) + "\" fill=\"" + colour(t) + "\"/>\n";
    }
    out += "<text x=\"" + f2(kWidth - kRight + 42) + "\" y=\"" + f2(kTop + 8) + "\">" + f2(hi) + " dB</text>\n";
    out += "<text x=\"" + f2(kWidth - kRight + 42) + "\" y=\"" + f2(kTop + ph) + "\">" + f2(lo) + " dB</text>\n";
    return out + "</svg>\n";
}

} // namespace mmsounder
