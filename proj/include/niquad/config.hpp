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

#ifndef NIQUAD_CONFIG_HPP
#define NIQUAD_CONFIG_HPP

#include <string>
#include <string_view>

#include "niquad/control.hpp"
#include "niquad/quadmodel.hpp"
#include "niquad/simulator.hpp"

namespace niquad {

enum class OutputFormat { kCsv, kJson };

/// Everything a CLI run needs. A default-constructed RunConfig is the
/// reference regulation scenario.
struct RunConfig {
    QuadParams quad{};
    ControllerParams controller{};
    SimConfig sim{};
    std::string output_path = "trajectory.csv";
    OutputFormat output_format = OutputFormat::kCsv;
    bool emit_plot = false;

    bool operator==(const RunConfig&) const = default;
};

/**
 * Parses a JSON run configuration. Schema (all keys optional):
 *
 *   {
 *     "quad": {"m", "g", "l", "b", "d", "jx", "jy", "jz", "jr"},
 *     "controller": {"kp": [kx, ky] | k, "gamma_ir", "delta", "gamma_sector"},
 *     "sim": {"t_final", "dt", "initial_horiz": [x, xdot, y, ydot],
 *             "initial_ctrl": [z1, z2], "disturbance": [wx, wy] | null,
 *             "mode": "horizontal_pointmass" | "full_quadrotor",
 *             "log_decimation", "reference": [x, y], "allow_invalid_params",
 *             "max_tilt"},
 *     "output_path": "...", "output_format": "csv" | "json", "emit_plot": bool
 *   }
 *
 * Malformed JSON and unknown keys throw Error(kParseError); values that break
 * a type invariant throw Error(kValidationError) naming the field path.
 */
RunConfig parse_config(std::string_view text);

/// Inverse of parse_config; every field is written explicitly.
std::string serialize_config(const RunConfig& cfg);

std::string_view to_string(SimMode mode);
std::string_view to_string(OutputFormat format);

}  // namespace niquad

#endif  // NIQUAD_CONFIG_HPP
