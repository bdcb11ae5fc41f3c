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

#include "niquad/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "niquad/error.hpp"

namespace niquad {

void ControllerParams::validate() const {
    auto fail = [](const char* field, const char* rule) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string("controller parameter '") + field + "' " + rule);
    };
    if (!(kp(0) > 0.0) || !(kp(1) > 0.0) || !kp.allFinite()) fail("kp", "must be positive");
    if (!(gamma_ir > 0.0) || !std::isfinite(gamma_ir)) fail("gamma_ir", "must be positive");
    if (!(delta > 0.0) || !std::isfinite(delta)) fail("delta", "must be positive");
    if (!(gamma_sector > 0.0 && gamma_sector < 1.0)) fail("gamma_sector", "must lie in (0, 1)");
}

Eigen::Vector2d inner_loop_command(const Eigen::Vector2d& xi_h, const Eigen::Vector2d& xi_d,
                                   const Eigen::Vector2d& kp) {
    if (!(kp(0) > 0.0) || !(kp(1) > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "inner-loop gains must be positive");
    }
    return -kp.cwiseProduct(xi_h - xi_d);
}

Eigen::Vector2d sni_controller_derivative(const ControllerState& cs, const Eigen::Vector2d& xi_h,
                                          const ControllerParams& p) {
    return -p.gamma_ir * p.delta * cs.z + p.gamma_ir * xi_h;
}

StateSpace controller_state_space(const ControllerParams& p) {
    p.validate();
    const Eigen::Matrix2d eye = Eigen::Matrix2d::Identity();
    return StateSpace(-p.gamma_ir * p.delta * eye, p.gamma_ir * eye, eye, Eigen::Matrix2d::Zero());
}

StateSpace plant_axis_state_space(const QuadParams& qp, double kp_axis) {
    const AxisModel ax = reshaped_axis_model(kp_axis, qp);
    return StateSpace(ax.a, ax.b, ax.c, Eigen::MatrixXd::Zero(1, 1));
}

double delta_min(double m, const Eigen::Vector2d& kp, double gamma_sector) {
    if (!(m > 0.0) || !(kp(0) > 0.0) || !(kp(1) > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "delta_min needs positive m and kp");
    }
    if (!(gamma_sector > 0.0 && gamma_sector < 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "sector gamma must lie in (0, 1)");
    }
    return 1.0 / (gamma_sector * m * kp.minCoeff());
}

ParamCheck validate_params(const QuadParams& qp, const ControllerParams& cp) {
    qp.validate();
    cp.validate();
    const double dmin = delta_min(qp.m, cp.kp, cp.gamma_sector);
    return {cp.delta >= dmin, dmin, cp.delta - dmin};
}

Eigen::Vector2d steady_state_position(const Eigen::Vector2d& force, const QuadParams& qp,
                                      const Eigen::Vector2d& kp) {
    if (!(kp(0) > 0.0) || !(kp(1) > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "inner-loop gains must be positive");
    }
    return force.cwiseQuotient(qp.m * kp);
}

Eigen::Vector2d controller_dc_output(const Eigen::Vector2d& xi, const ControllerParams& cp) {
    return xi / cp.delta;
}

Eigen::Matrix3d closed_loop_axis_matrix(const QuadParams& qp, const ControllerParams& cp,
                                        Axis axis) {
    const double kp = axis == Axis::kX ? cp.kp(0) : cp.kp(1);
    Eigen::Matrix3d a;
    // clang-format off
    a << 0.0,         1.0, 0.0,
         -kp,         0.0, 1.0 / qp.m,
         cp.gamma_ir, 0.0, -cp.gamma_ir * cp.delta;
    // clang-format on
    return a;
}

std::array<double, 4> closed_loop_char_poly(const QuadParams& qp, const ControllerParams& cp,
                                            Axis axis) {
    const double kp = axis == Axis::kX ? cp.kp(0) : cp.kp(1);
    const double gd = cp.gamma_ir * cp.delta;
    return {1.0, gd, kp, kp * gd - cp.gamma_ir / qp.m};
}

Eigen::Vector3cd closed_loop_eigenvalues(const QuadParams& qp, const ControllerParams& cp,
                                         Axis axis) {
    Eigen::EigenSolver<Eigen::Matrix3d> es(closed_loop_axis_matrix(qp, cp, axis), false);
    return es.eigenvalues();
}

}  // namespace niquad
