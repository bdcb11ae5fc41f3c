/*
 Copyright 2026 The niquad Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "niquad/trajectory_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace niquad {

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

void write_csv(const TrajectoryLog& log, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (std::size_t k = 0; k < log.size(); ++k) {
        const HorizState& h = log.horiz_states[k];
        const Eigen::Vector2d& z = log.ctrl_states[k].z;
        const Eigen::Vector2d& f = log.forces[k];
        const std::array<double, 10> row{log.times[k], h.x, h.xdot, h.y, h.ydot,
                                         z(0),         z(1), f(0),  f(1), log.storage[k]};
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << format_double(row[c]);
        }
        out << '\n';
    }
}

nlohmann::json to_json(const TrajectoryLog& log) {
    nlohmann::json j;
    std::array<std::vector<double>, 9> cols;
    for (std::size_t k = 0; k < log.size(); ++k) {
        const HorizState& h = log.horiz_states[k];
        cols[0].push_back(h.x);
        cols[1].push_back(h.xdot);
        cols[2].push_back(h.y);
        cols[3].push_back(h.ydot);
        cols[4].push_back(log.ctrl_states[k].z(0));
        cols[5].push_back(log.ctrl_states[k].z(1));
        cols[6].push_back(log.forces[k](0));
        cols[7].push_back(log.forces[k](1));
    }
    j["t"] = log.times;
    const std::array<const char*, 8> names{"x", "xdot", "y", "ydot", "z1", "z2", "Fx", "Fy"};
    for (std::size_t c = 0; c < names.size(); ++c) j[names[c]] = cols[c];
    j["V"] = log.storage;
    if (!log.residuals.empty()) j["residuals"] = log.residuals;
    return j;
}

void write_svg_plot(const TrajectoryLog& log, std::ostream& out) {
    constexpr double kWidth = 800, kHeight = 400, kMargin = 50;
    double t_max = log.size() ? log.times.back() : 1.0;
    if (!(t_max > 0.0)) t_max = 1.0;
    double lo = 0.0, hi = 0.0;
    for (const auto& h : log.horiz_states) {
        lo = std::min({lo, h.x, h.y});
        hi = std::max({hi, h.x, h.y});
    }
    if (hi - lo < 1e-12) hi = lo + 1.0;
    auto px = [&](double t) { return kMargin + (kWidth - 2 * kMargin) * t / t_max; };
    auto py = [&](double v) { return kHeight - kMargin - (kHeight - 2 * kMargin) * (v - lo) / (hi - lo); };

    // Thin to at most ~2000 vertices per series.
    const std::size_t stride = std::max<std::size_t>(1, log.size() / 2000);
    auto polyline = [&](auto&& value, const char* color) {
        out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < log.size(); k += stride) {
            out << format_double(px(log.times[k])) << ',' << format_double(py(value(k))) << ' ';
        }
        out << "\"/>\n";
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "  <line x1=\"" << kMargin << "\" y1=\"" << py(0.0) << "\" x2=\"" << kWidth - kMargin
        << "\" y2=\"" << py(0.0) << "\" stroke=\"#999\"/>\n";
    out << "  <line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
        << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"#999\"/>\n";
    polyline([&](std::size_t k) { return log.horiz_states[k].x; }, "#1f77b4");
    polyline([&](std::size_t k) { return log.horiz_states[k].y; }, "#d62728");
    out << "  <text x=\"" << kWidth - kMargin - 60 << "\" y=\"" << kMargin
        << "\" fill=\"#1f77b4\">x(t)</text>\n";
    out << "  <text x=\"" << kWidth - kMargin - 60 << "\" y=\"" << kMargin + 18
        << "\" fill=\"#d62728\">y(t)</text>\n";
    out << "  <text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12 << "\">t [s] (0 - "
        << format_double(t_max) << ")</text>\n";
    out << "  <text x=\"8\" y=\"" << kMargin - 10 << "\">position [m] (" << format_double(lo)
        << " .. " << format_double(hi) << ")</text>\n";
    out << "</svg>\n";
}

}  // namespace niquad
