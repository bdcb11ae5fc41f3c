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

#ifndef NIQUAD_TRAJECTORY_IO_HPP
#define NIQUAD_TRAJECTORY_IO_HPP

#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "niquad/simulator.hpp"

namespace niquad {

inline constexpr std::string_view kCsvHeader = "t,x,xdot,y,ydot,z1,z2,Fx,Fy,V";

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// One row per logged sample; columns per kCsvHeader.
void write_csv(const TrajectoryLog& log, std::ostream& out);

/// Same fields as the CSV, as arrays keyed by column name.
nlohmann::json to_json(const TrajectoryLog& log);

/// x(t) and y(t) line plot.
void write_svg_plot(const TrajectoryLog& log, std::ostream& out);

}  // namespace niquad

#endif  // NIQUAD_TRAJECTORY_IO_HPP
