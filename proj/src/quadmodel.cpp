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

#include "niquad/quadmodel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "niquad/error.hpp"

namespace niquad {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string("quad parameter '") + name + "' must be positive and finite");
    }
}

void require_positive_gains(const Eigen::Vector2d& kp) {
    if (!(kp(0) > 0.0) || !(kp(1) > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "inner-loop gains must be positive");
    }
}

}  // namespace

void QuadParams::validate() const {
    require_positive(m, "m");
    require_positive(g, "g");
    require_positive(l, "l");
    require_positive(b, "b");
    require_positive(d, "d");
    require_positive(jx, "jx");
    require_positive(jy, "jy");
    require_positive(jz, "jz");
    require_positive(jr, "jr");
}

InertiaCoefficients inertia_coefficients(const QuadParams& p) {
    return {
        (p.jy - p.jz) / p.jx,
        p.jr / p.jx,
        (p.jz - p.jx) / p.jy,
        p.jr / p.jy,
        (p.jx - p.jy) / p.jz,
        p.l / p.jx,
        p.l / p.jy,
        1.0 / p.jz,
    };
}

EulerAngles::EulerAngles(double phi, double theta, double psi)
    : phi_(phi), theta_(theta), psi_(psi) {
    if (!(std::abs(phi) < kHalfPi)) {
        throw Error(ErrorCode::kInvalidArgument, "roll must lie in (-pi/2, pi/2)");
    }
    if (!(std::abs(theta) < kHalfPi)) {
        throw Error(ErrorCode::kInvalidArgument, "pitch must lie in (-pi/2, pi/2)");
    }
    if (!(psi > -std::numbers::pi && psi <= std::numbers::pi)) {
        throw Error(ErrorCode::kInvalidArgument, "yaw must lie in (-pi, pi]");
    }
}

Eigen::Matrix3d rotation_body_to_inertial(const EulerAngles& eta) {
    const double cf = std::cos(eta.phi()), sf = std::sin(eta.phi());
    const double ct = std::cos(eta.theta()), st = std::sin(eta.theta());
    const double cp = std::cos(eta.psi()), sp = std::sin(eta.psi());
    Eigen::Matrix3d r;
    // clang-format off
    r << ct * cp, cp * st * sf - cf * sp, cf * cp * st + sf * sp,
         ct * sp, st * sf * sp + cf * cp, cf * st * sp - cp * sf,
         -st,     ct * sf,                ct * cf;
    // clang-format on
    return r;
}

EulerRateMap euler_rate_map(const EulerAngles& eta) {
    const double cf = std::cos(eta.phi()), sf = std::sin(eta.phi());
    const double ct = std::cos(eta.theta()), st = std::sin(eta.theta());
    Eigen::Matrix3d w;
    // clang-format off
    w << 1.0, 0.0, -st,
         0.0, cf,  sf * ct,
         0.0, -sf, cf * ct;
    // clang-format on
    return {w, w.determinant(), std::abs(ct) < 1e-6};
}

State12 full_dynamics(const State12& x, const ControlInput4& u,
                      const QuadParams& p, double omega_bar) {
    using namespace idx;
    if (u.u1 < 0.0) {
        throw Error(ErrorCode::kInvalidArgument, "thrust u1 must be non-negative");
    }
    if (!(std::abs(x(kPhi)) < kHalfPi) || !(std::abs(x(kTheta)) < kHalfPi)) {
        throw Error(ErrorCode::kInvalidArgument, "roll/pitch outside (-pi/2, pi/2)");
    }
    const auto k = inertia_coefficients(p);
    const double cf = std::cos(x(kPhi)), sf = std::sin(x(kPhi));
    const double ct = std::cos(x(kTheta)), st = std::sin(x(kTheta));
    const double cp = std::cos(x(kPsi)), sp = std::sin(x(kPsi));
    const double thrust_acc = u.u1 / p.m;

    State12 f;
    f(kX) = x(kXDot);
    f(kXDot) = -thrust_acc * (sf * sp + cf * st * cp);
    f(kY) = x(kYDot);
    f(kYDot) = thrust_acc * (sf * cp - cf * st * sp);
    f(kZ) = x(kZDot);
    f(kZDot) = p.g - thrust_acc * cf * ct;
    f(kPhi) = x(kPhiDot);
    f(kPhiDot) = x(kThetaDot) * x(kPsiDot) * k.a1 - x(kThetaDot) * k.a2 * omega_bar + k.b1 * u.u2;
    f(kTheta) = x(kThetaDot);
    f(kThetaDot) = x(kPhiDot) * x(kPsiDot) * k.a3 + x(kPhiDot) * k.a4 * omega_bar + k.b2 * u.u3;
    f(kPsi) = x(kPsiDot);
    f(kPsiDot) = x(kThetaDot) * x(kPhiDot) * k.a5 + k.b3 * u.u4;
    return f;
}

Eigen::Vector4d reshaped_horizontal_dynamics(const HorizState& s,
                                             const Eigen::Vector2d& force,
                                             const Eigen::Vector2d& kp,
                                             const QuadParams& p) {
    require_positive_gains(kp);
    return {s.xdot, force(0) / p.m - kp(0) * s.x, s.ydot, force(1) / p.m - kp(1) * s.y};
}

double storage_value(const HorizState& s, const Eigen::Vector2d& kp,
                     const QuadParams& p, StorageForm form) {
    require_positive_gains(kp);
    const double kinetic = 0.5 * p.m * (s.xdot * s.xdot + s.ydot * s.ydot);
    const double spring = 0.5 * (kp(0) * s.x * s.x + kp(1) * s.y * s.y);
    return kinetic + (form == StorageForm::kMassWeighted ? p.m * spring : spring);
}

AxisModel reshaped_axis_model(double kp_axis, const QuadParams& p) {
    if (!(kp_axis > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "inner-loop gain must be positive");
    }
    AxisModel model;
    model.a << 0.0, 1.0, -kp_axis, 0.0;
    model.b << 0.0, 1.0 / p.m;
    model.c << 1.0, 0.0;
    return model;
}

Eigen::Matrix2d axis_storage_matrix(double kp_axis, const QuadParams& p, StorageForm form) {
    const double spring = form == StorageForm::kMassWeighted ? p.m * kp_axis : kp_axis;
    return Eigen::Vector2d(spring, p.m).asDiagonal();
}

}  // namespace niquad
