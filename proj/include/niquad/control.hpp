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

#ifndef NIQUAD_CONTROL_HPP
#define NIQUAD_CONTROL_HPP

#include <array>

#include <Eigen/Dense>

#include "niquad/ni_analysis.hpp"
#include "niquad/quadmodel.hpp"

namespace niquad {

/// Inner proportional gains, integral resonant controller (Gamma, delta) and
/// the sector constant gamma used to size delta.
struct ControllerParams {
    Eigen::Vector2d kp{5.0, 5.0};
    double gamma_ir = 160.0;
    double delta = 0.6;
    double gamma_sector = 0.8;

    /// Throws Error(kInvalidArgument) naming the offending field.
    void validate() const;

    bool operator==(const ControllerParams&) const = default;
};

struct ControllerState {
    Eigen::Vector2d z = Eigen::Vector2d::Zero();

    /// The controller output is its state.
    const Eigen::Vector2d& output() const { return z; }

    bool operator==(const ControllerState&) const = default;
};

/// -Kp (xi_h - xi_d).
Eigen::Vector2d inner_loop_command(const Eigen::Vector2d& xi_h, const Eigen::Vector2d& xi_d,
                                   const Eigen::Vector2d& kp);

/// z' = -Gamma delta z + Gamma xi_h.
Eigen::Vector2d sni_controller_derivative(const ControllerState& cs, const Eigen::Vector2d& xi_h,
                                          const ControllerParams& p);

/// Realization (A, B, C, D) = (-Gamma Delta, Gamma, I, 0) of (sI + Gamma Delta)^-1 Gamma.
StateSpace controller_state_space(const ControllerParams& p);

/// Single-axis plant (position, velocity) from force to position.
StateSpace plant_axis_state_space(const QuadParams& qp, double kp_axis);

/// 1 / (gamma m min(kp)): smallest delta meeting the sector bound.
double delta_min(double m, const Eigen::Vector2d& kp, double gamma_sector);

struct ParamCheck {
    bool passed;
    double delta_min;
    double margin;  // delta - delta_min
};

ParamCheck validate_params(const QuadParams& qp, const ControllerParams& cp);

/// F_i / (m kp_i): plant position at rest under a constant force.
Eigen::Vector2d steady_state_position(const Eigen::Vector2d& force, const QuadParams& qp,
                                      const Eigen::Vector2d& kp);

/// Delta^-1 xi: controller output at rest under a constant input.
Eigen::Vector2d controller_dc_output(const Eigen::Vector2d& xi, const ControllerParams& cp);

enum class Axis { kX, kY };

/**
 * Per-axis closed loop in (position, velocity, z) under F = +z and
 * controller input +position:
 *
 *   [[0, 1, 0], [-kp, 0, 1/m], [Gamma, 0, -Gamma delta]]
 */
Eigen::Matrix3d closed_loop_axis_matrix(const QuadParams& qp, const ControllerParams& cp,
                                        Axis axis);

/// Monic characteristic polynomial coefficients {1, Gamma delta, kp, kp Gamma delta - Gamma/m}.
std::array<double, 4> closed_loop_char_poly(const QuadParams& qp, const ControllerParams& cp,
                                            Axis axis);

Eigen::Vector3cd closed_loop_eigenvalues(const QuadParams& qp, const ControllerParams& cp,
                                         Axis axis);

}  // namespace niquad

#endif  // NIQUAD_CONTROL_HPP
